#pragma once

// Generating-function machinery linking bit-wise and byte-wise Hamming
// weights of binary words.
//
// Two routes are provided.  The exact route expands the bivariate counting
// polynomial W_{B,1}(x,y)^L (1+x)^(n-LB) with arbitrary-precision integers
// and backs oracles and tests.  The production route computes the same
// conditional byte-weight distributions directly as normalized floating
// point tables; every DP step mixes nonnegative hypergeometric weights, so
// it is cancellation-free and stays accurate for block lengths in the
// thousands where the integer tables would be enormous.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace rsbch {

// log of binomial coefficient via lgamma; exact enough for ratio weights.
inline double lchoose(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline mpz_class mpz_binom(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Exact coefficient table: coeffs[l][v] counts length-n binary words with
// bit weight l whose designated strip of L bytes has byte weight v.
struct BivariatePoly {
    int B = 0, L = 0, n = 0;
    std::vector<std::vector<mpz_class>> coeffs;  // [l in 0..n][v in 0..L]

    const mpz_class& at(int l, int v) const { return coeffs[l][v]; }
};

inline BivariatePoly strip_table(int B, int L, int n) {
    if (B < 1 || L < 0 || n < 0 || static_cast<long long>(L) * B > n)
        throw std::invalid_argument("strip_table requires L*B <= n");
    BivariatePoly t;
    t.B = B;
    t.L = L;
    t.n = n;

    std::vector<mpz_class> binB(B + 1);
    for (int i = 0; i <= B; ++i) binB[i] = mpz_binom(B, i);

    // byte-by-byte convolution of W_{B,1} = 1 + y*sum_i C(B,i) x^i
    std::vector<std::vector<mpz_class>> cur(1, std::vector<mpz_class>(L + 1, 0));
    cur[0][0] = 1;
    for (int j = 0; j < L; ++j) {
        const int lj = j * B, lj1 = (j + 1) * B;
        std::vector<std::vector<mpz_class>> nxt(lj1 + 1, std::vector<mpz_class>(L + 1, 0));
        for (int l = 0; l <= lj; ++l)
            for (int v = 0; v <= L; ++v) {
                const mpz_class& c = cur[l][v];
                if (c == 0) continue;
                nxt[l][v] += c;  // all-zero byte
                if (v + 1 <= L)
                    for (int i = 1; i <= B; ++i) nxt[l + i][v + 1] += c * binB[i];
            }
        cur.swap(nxt);
    }
    // remaining n - LB free bits contribute (1+x)^(n-LB)
    const int f = n - L * B;
    t.coeffs.assign(n + 1, std::vector<mpz_class>(L + 1, 0));
    std::vector<mpz_class> binF(f + 1);
    for (int i = 0; i <= f; ++i) binF[i] = mpz_binom(f, i);
    for (int l = 0; l <= L * B; ++l)
        for (int v = 0; v <= L; ++v) {
            const mpz_class& c = cur[l][v];
            if (c == 0) continue;
            for (int i = 0; i <= f; ++i) t.coeffs[l + i][v] += c * binF[i];
        }
    return t;
}

// Exact coefficient of x^ell y_1^{r_1}...y_M^{r_M} in the multivariate
// W_{B,n,lambda}.  Small instances only; this is the oracle the marginal
// tables are checked against.
inline mpz_class multivariate_coeff(int B, int n, const std::vector<int>& lambda, int ell,
                                    const std::vector<int>& r,
                                    long long state_cap = 1'000'000'000) {
    if (lambda.size() != r.size()) throw std::invalid_argument("lambda and r sizes differ");
    long long k = 0;
    for (int Li : lambda) k += static_cast<long long>(Li) * B;
    if (k > n) throw std::invalid_argument("sum(L_i)*B exceeds n");
    long long state = 1;
    for (int Li : lambda) state *= (static_cast<long long>(Li) * B + 1);
    if (state * (n + 1) > state_cap)
        throw std::length_error("multivariate state space exceeds configured cap");
    if (ell < 0 || ell > n) return 0;

    // For a fixed byte-weight target r_i per strip, each strip contributes a
    // univariate polynomial in x; convolve those with (1+x)^(n-k).
    std::vector<mpz_class> acc(1, 1);
    for (std::size_t s = 0; s < lambda.size(); ++s) {
        const int L = lambda[s];
        if (r[s] < 0 || r[s] > L) return 0;
        BivariatePoly st = strip_table(B, L, L * B);
        std::vector<mpz_class> strip_poly(L * B + 1);
        for (int l = 0; l <= L * B; ++l) strip_poly[l] = st.at(l, r[s]);
        std::vector<mpz_class> nxt(acc.size() + strip_poly.size() - 1, 0);
        for (std::size_t a = 0; a < acc.size(); ++a) {
            if (acc[a] == 0) continue;
            for (std::size_t bdeg = 0; bdeg < strip_poly.size(); ++bdeg)
                if (strip_poly[bdeg] != 0) nxt[a + bdeg] += acc[a] * strip_poly[bdeg];
        }
        acc.swap(nxt);
    }
    const int f = static_cast<int>(n - k);
    mpz_class out = 0;
    for (std::size_t a = 0; a < acc.size(); ++a) {
        const long long i = ell - static_cast<long long>(a);
        if (i < 0 || i > f) continue;
        out += acc[a] * mpz_binom(f, static_cast<unsigned>(i));
    }
    return out;
}

// q[l][v] = Pr(byte weight = v | bit weight = l), rows 0..n.
struct CondByteDist {
    int B = 0, L = 0, n = 0;
    std::vector<std::vector<double>> q;  // [l][v in 0..L]
};

inline CondByteDist cond_byte_dist(const BivariatePoly& t) {
    CondByteDist d;
    d.B = t.B;
    d.L = t.L;
    d.n = t.n;
    d.q.assign(t.n + 1, std::vector<double>(t.L + 1, 0.0));
    for (int l = 0; l <= t.n; ++l) {
        const mpz_class denom = mpz_binom(t.n, l);
        for (int v = 0; v <= t.L; ++v) {
            if (t.coeffs[l][v] == 0) continue;
            mpq_class ratio(t.coeffs[l][v], denom);
            ratio.canonicalize();
            d.q[l][v] = ratio.get_d();
        }
    }
    return d;
}

// Production table: rows l = 0..ell_cap of the conditional byte-weight pmf
// for one strip of L bytes inside an n-bit word.  Byte weights at or above
// vcap are folded into the last bucket (index vcap).
struct StripCondTable {
    int B = 0, L = 0, n = 0;
    int ell_cap = 0;
    int vcap = 0;  // bucket count is vcap+1; index vcap = "vcap or more"
    std::vector<std::vector<double>> q;

    int vdim() const { return vcap + 1; }
};

inline StripCondTable build_strip_cond_table(int B, int L, int n, int ell_cap, int vcap) {
    if (static_cast<long long>(L) * B > n)
        throw std::invalid_argument("strip does not fit in word");
    StripCondTable t;
    t.B = B;
    t.L = L;
    t.n = n;
    t.ell_cap = ell_cap = std::min(ell_cap, n);
    t.vcap = vcap = std::min(vcap, L);
    const int strip_bits = L * B;
    const int scap = std::min(ell_cap, strip_bits);

    // Phase 1: bytes of the strip.  a[s][v] = Pr(strip bit weight = s and
    // byte weight bucket = v | the strip's jB processed bits hold s errors),
    // propagated with Vandermonde split weights so rows stay normalized.
    std::vector<std::vector<double>> a(scap + 1, std::vector<double>(vcap + 1, 0.0));
    std::vector<std::vector<double>> nxt(scap + 1, std::vector<double>(vcap + 1, 0.0));
    a[0][0] = 1.0;
    int processed = 0;
    for (int j = 0; j < L; ++j) {
        const int hi = std::min(scap, processed + B);
        for (auto& row : nxt) std::fill(row.begin(), row.end(), 0.0);
        for (int s = 0; s <= hi; ++s) {
            const double l_tot = lchoose(processed + B, s);
            const int imax = std::min(B, s);
            for (int i = (s > processed) ? (s - processed) : 0; i <= imax; ++i) {
                const double w = std::exp(lchoose(B, i) + lchoose(processed, s - i) - l_tot);
                if (w == 0.0) continue;
                const auto& src = a[s - i];
                auto& dst = nxt[s];
                if (i == 0) {
                    for (int v = 0; v <= vcap; ++v) dst[v] += w * src[v];
                } else {
                    for (int v = 0; v <= vcap; ++v)
                        dst[std::min(v + 1, vcap)] += w * src[v];
                }
            }
        }
        a.swap(nxt);
        processed += B;
    }

    // Phase 2: mix in the n - LB bits outside the strip.
    const int f = n - strip_bits;
    t.q.assign(ell_cap + 1, std::vector<double>(vcap + 1, 0.0));
    for (int l = 0; l <= ell_cap; ++l) {
        const double l_tot = lchoose(n, l);
        auto& row = t.q[l];
        const int smax = std::min(l, scap);
        for (int s = (l > f) ? (l - f) : 0; s <= smax; ++s) {
            const double w = std::exp(lchoose(strip_bits, s) + lchoose(f, l - s) - l_tot);
            if (w == 0.0) continue;
            const auto& src = a[s];
            for (int v = 0; v <= vcap; ++v) row[v] += w * src[v];
        }
    }
    return t;
}

// Memoized, concurrently readable strip-table cache.  Tables grow on demand
// when a larger ell_cap is requested for the same (B, L, n, vcap) key.
class StripTableCache {
  public:
    std::shared_ptr<const StripCondTable> get(int B, int L, int n, int ell_cap, int vcap) {
        ell_cap = std::min(ell_cap, n);
        vcap = std::min(vcap, L);
        const Key key{B, L, n, vcap};
        {
            std::shared_lock lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end() && it->second->ell_cap >= ell_cap) return it->second;
        }
        // round the cap up so nearby requests share one table
        int build_cap = std::min(n, std::max(ell_cap + ell_cap / 4, ell_cap + 8));
        auto built = std::make_shared<const StripCondTable>(
            build_strip_cond_table(B, L, n, build_cap, vcap));
        std::unique_lock lock(mu_);
        auto& slot = map_[key];
        if (!slot || slot->ell_cap < built->ell_cap) slot = built;
        return slot;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

    void clear() {
        std::unique_lock lock(mu_);
        map_.clear();
    }

  private:
    using Key = std::tuple<int, int, int, int>;
    mutable std::shared_mutex mu_;
    std::map<Key, std::shared_ptr<const StripCondTable>> map_;
};

inline StripTableCache& global_strip_cache() {
    static StripTableCache cache;
    return cache;
}

}  // namespace rsbch
