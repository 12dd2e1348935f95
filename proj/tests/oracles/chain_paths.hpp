#pragma once

#include <algorithm>
#include <vector>

namespace oracle {

/// Sums over every per-slot outcome sequence of the defect process: Bob's
/// erasure, Eve's erasure, which receivers the shared vector is innovative
/// for, and the ACK outcome. Spans are nested, so a vector innovative for the
/// receiver with the smaller defect is innovative for the other one as well.
///
/// `W[t]` is the innovation probability at rank t. With `swap_ack_quirk`
/// the published rule for Bob-decoded states is used: an ACK that gets
/// through together with an innovative packet for Eve leaves her defect
/// unchanged, and one that gets through without it lowers the defect.
class ChainPaths {
public:
    ChainPaths(int K, std::vector<double> W, double eB, double eE, double eK, bool swap_ack_quirk)
        : K_(K), W_(std::move(W)), eB_(eB), eE_(eE), eK_(eK), quirk_(swap_ack_quirk) {}

    double intercept(int steps) const { return walk(K_, K_, false, steps); }

private:
    double innov(int d) const { return d > 0 ? W_[static_cast<std::size_t>(K_ - d)] : 0.0; }

    double walk(int dB, int dE, bool ack, int left) const {
        if (ack || left == 0) return dE == 0 ? 1.0 : 0.0;
        const double WB = innov(dB);
        const double WE = innov(dE);
        // Shared vector classes: innovative for both, for the larger-defect
        // receiver only, for neither.
        const double both = std::min(WB, WE);
        const double lo_only = std::max(WB, WE) - both;
        const bool bob_is_lo = dB > dE;
        struct Class { double prob; bool bob; bool eve; };
        const Class classes[3] = {
            {both, dB > 0, dE > 0},
            {lo_only, bob_is_lo, !bob_is_lo && dB != dE},
            {1.0 - both - lo_only, false, false},
        };
        double total = 0.0;
        for (const auto& cls : classes) {
            if (cls.prob == 0.0) continue;
            for (int bob_rx = 0; bob_rx < 2; ++bob_rx) {
                for (int eve_rx = 0; eve_rx < 2; ++eve_rx) {
                    const double pr = cls.prob * (bob_rx ? 1 - eB_ : eB_) * (eve_rx ? 1 - eE_ : eE_);
                    if (pr == 0.0) continue;
                    const bool eve_gain = eve_rx && cls.eve;
                    const int nB = dB - (bob_rx && cls.bob ? 1 : 0);
                    const int nE = dE - (eve_gain ? 1 : 0);
                    if (nB > 0) {
                        total += pr * walk(nB, nE, false, left - 1);
                        continue;
                    }
                    // Bob decoded now or earlier: an ACK is attempted this slot.
                    if (eK_ > 0) total += pr * eK_ * walk(0, nE, false, left - 1);
                    if (eK_ < 1) {
                        int after = nE;
                        if (quirk_ && dB == 0 && dE > 0) after = eve_gain ? dE : dE - 1;
                        total += pr * (1 - eK_) * walk(0, after, true, left - 1);
                    }
                }
            }
        }
        return total;
    }

    int K_;
    std::vector<double> W_;
    double eB_, eE_, eK_;
    bool quirk_;
};

}  // namespace oracle
