#include "srlnc/params.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "srlnc/error.hpp"

namespace srlnc {

void validate_sparsity(double p, unsigned q) {
    if (q < 2 || q > 256 || !std::has_single_bit(q)) {
        throw ConfigError("q must be a power of two in [2,256], got " + std::to_string(q));
    }
    const double p_min = 1.0 / static_cast<double>(q);
    if (!std::isfinite(p) || p < p_min || p >= 1.0) {
        std::ostringstream os;
        os << "sparsity p must lie in [1/q, 1) = [" << p_min << ", 1), got " << p;
        throw ConfigError(os.str());
    }
}

void CodeParams::validate_law() const {
    if (K < 1) throw ConfigError("generation size K must be >= 1, got " + std::to_string(K));
    validate_sparsity(p, q);
}

void CodeParams::validate() const {
    validate_law();
    if (N_hat <= K) {
        throw ConfigError("transmission budget N_hat must exceed K (N_hat=" + std::to_string(N_hat) +
                          ", K=" + std::to_string(K) + ")");
    }
}

void ChannelParams::validate() const {
    auto unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
    if (!unit(eps_B) || !unit(eps_E) || !unit(eps_K)) {
        std::ostringstream os;
        os << "erasure probabilities must lie in [0,1] (eps_B=" << eps_B << ", eps_E=" << eps_E
           << ", eps_K=" << eps_K << ")";
        throw ConfigError(os.str());
    }
    if (eps_B > eps_E) {
        std::ostringstream os;
        os << "eps_B=" << eps_B << " exceeds eps_E=" << eps_E
           << ": a receiver-favouring eavesdropper channel (eps_B > eps_E) cannot be secured by "
              "code sparsity alone and is not supported";
        throw ConfigError(os.str());
    }
}

std::string describe(const CodeParams& code) {
    std::ostringstream os;
    os << "K=" << code.K << " q=" << code.q << " p=" << code.p << " N_hat=" << code.N_hat;
    return os.str();
}

std::string describe(const ChannelParams& chan) {
    std::ostringstream os;
    os << "eps_B=" << chan.eps_B << " eps_E=" << chan.eps_E << " eps_K=" << chan.eps_K;
    return os.str();
}

}  // namespace srlnc
