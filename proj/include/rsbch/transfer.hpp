#pragma once

// Weight-distribution transforms across the inner decoder: the BSC input
// weight pmf and the decoder-output pmf under miscorrection-free and
// genie-aided decoding models.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rsbch/codespec.hpp"
#include "rsbch/weightgf.hpp"

namespace rsbch {

struct WeightPmf {
    int n = 0;                 // support upper bound
    std::vector<double> p_of;  // index = weight, size n+1
    double tail_mass = 0.0;    // probability truncated beyond n (if any)

    double sum() const {
        double s = 0;
        for (double x : p_of) s += x;
        return s;
    }
    double mean() const {
        double s = 0;
        for (int i = 0; i <= n; ++i) s += i * p_of[i];
        return s;
    }
};

inline WeightPmf bsc_weight_pmf(int n, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("crossover probability outside [0,1]");
    WeightPmf w;
    w.n = n;
    w.p_of.assign(n + 1, 0.0);
    if (p == 0.0) {
        w.p_of[0] = 1.0;
        return w;
    }
    if (p == 1.0) {
        w.p_of[n] = 1.0;
        return w;
    }
    const double lp = std::log(p), lq = std::log1p(-p);
    for (int l = 0; l <= n; ++l)
        w.p_of[l] = std::exp(lchoose(n, l) + l * lp + (n - l) * lq);
    return w;
}

// Truncated variant: support 0..ell_cap with the remaining upper-tail
// probability reported in tail_mass.
inline WeightPmf bsc_weight_pmf_truncated(int n, double p, int ell_cap) {
    ell_cap = std::min(ell_cap, n);
    WeightPmf full = bsc_weight_pmf(n, p);
    if (ell_cap == n) return full;
    WeightPmf w;
    w.n = ell_cap;
    w.p_of.assign(full.p_of.begin(), full.p_of.begin() + ell_cap + 1);
    double tail = 0.0;
    for (int l = n; l > ell_cap; --l) tail += full.p_of[l];
    w.tail_mass = tail;
    return w;
}

// Smallest cap such that the Binomial(n,p) upper tail beyond it is below
// tail_bound (conservative Chernoff-free walk along pmf ratios).
inline int bsc_ell_cap(int n, double p, double tail_bound = 1e-30) {
    if (p <= 0.0) return 0;
    if (p >= 0.5) return n;
    const double mean = n * p;
    int l = static_cast<int>(mean) + 1;
    // walk up while the geometric-dominated tail bound is too large
    while (l < n) {
        const double ratio = (static_cast<double>(n - l) / (l + 1)) * p / (1.0 - p);
        if (ratio >= 1.0) {
            ++l;
            continue;
        }
        const double lpmf = lchoose(n, l) + l * std::log(p) + (n - l) * std::log1p(-p);
        const double ltail = lpmf - std::log1p(-ratio);
        if (ltail < std::log(tail_bound)) break;
        ++l;
    }
    return std::min(n, l + 2);
}

struct DecoderModel {
    int t = 0;
    BchVariant variant = BchVariant::standard;
    int ell_max = 0;        // genie window; 0 = miscorrection-free
    double pi_scale = 1.0;  // scale on the miscorrection-probability estimate
    int n_code = 0;         // physical inner block length
    int n_full = 0;         // unshortened length 2^b-1 (2^b for extended)
};

// Default genie policy: consider miscorrections only for received weights
// up to t+ell_max with ell_max = 4,3,2 for t = 1,2,3 and 0 otherwise.
inline int default_genie_ell_max(int t) {
    switch (t) {
        case 1: return 4;
        case 2: return 3;
        case 3: return 2;
        default: return 0;
    }
}

inline DecoderModel make_decoder_model(const BchParams& bch, bool with_miscorrection,
                                       double pi_scale = 1.0) {
    DecoderModel m;
    m.t = bch.t;
    m.variant = bch.variant;
    m.ell_max = with_miscorrection ? default_genie_ell_max(bch.t) : 0;
    m.pi_scale = pi_scale;
    m.n_code = bch.n;
    m.n_full = bch.n_full();
    return m;
}

// Miscorrection-free transform: weights 0..t collapse to 0, the rest pass.
inline WeightPmf mf_transform(const WeightPmf& in, int t) {
    WeightPmf out = in;
    double low = 0.0;
    for (int l = 0; l <= std::min(t, in.n); ++l) {
        low += out.p_of[l];
        out.p_of[l] = 0.0;
    }
    out.p_of[0] = low;
    return out;
}

inline double miscorrection_probability(const DecoderModel& m) {
    if (m.t <= 0) return 0.0;
    double lf = 0.0;
    for (int i = 2; i <= m.t; ++i) lf += std::log(i);
    const double pi =
        m.pi_scale * std::exp(m.t * std::log(static_cast<double>(m.n_code) / m.n_full) - lf);
    return std::min(1.0, pi);
}

// Genie-aided transform D_{ell_max}: weights w in (t, t+ell_max] are
// attempted; an attempt miscorrects with probability pi onto weight w+t
// (odd w onto w+1 for extended Hamming), otherwise the word is left as a
// decoding failure.  Heavier words always fail.
inline WeightPmf genie_transform(const WeightPmf& in, const DecoderModel& m) {
    const int t = m.t;
    if (m.ell_max <= 0 || t <= 0) return mf_transform(in, t);
    const int shift = (m.variant == BchVariant::extended_hamming) ? 1 : t;
    WeightPmf out;
    out.n = std::min(in.n + shift, m.n_code);
    out.tail_mass = in.tail_mass;
    out.p_of.assign(out.n + 1, 0.0);

    const double pi = miscorrection_probability(m);
    double low = 0.0;
    for (int w = 0; w <= in.n; ++w) {
        const double mass = in.p_of[w];
        if (mass == 0.0) continue;
        if (w <= t) {
            low += mass;
            continue;
        }
        if (w <= t + m.ell_max) {
            bool can_miscorrect = true;
            if (m.variant == BchVariant::extended_hamming) can_miscorrect = (w % 2 == 1) && w > 2;
            if (can_miscorrect) {
                const int w2 = std::min(w + shift, out.n);
                out.p_of[w2] += pi * mass;
                out.p_of[w] += (1.0 - pi) * mass;
                continue;
            }
        }
        out.p_of[w] += mass;  // declared failure
    }
    out.p_of[0] += low;
    return out;
}

// Output pmf of one inner decoder for a given model.
inline WeightPmf decoder_output_pmf(const WeightPmf& channel, const DecoderModel& m) {
    if (m.variant == BchVariant::trivial || m.t == 0) return channel;
    if (m.ell_max > 0) return genie_transform(channel, m);
    return mf_transform(channel, m.t);
}

}  // namespace rsbch
