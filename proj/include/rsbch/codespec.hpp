#pragma once

// Data model of one concatenated RS/BCH code instance: constituent code
// parameters, the M x m interleaver adjacency matrix, and zero-padding
// bookkeeping for the last inner codeword.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsbch {

struct RsParams {
    int N = 0;  // block length in B-bit symbols
    int K = 0;  // dimension in symbols
    int T = 0;  // symbol-error-correcting radius
    int B = 0;  // bits per symbol

    bool trivial() const { return T == 0; }
};

enum class BchVariant { standard, extended_hamming, trivial };

struct BchParams {
    int n = 0;  // block length, bits
    int k = 0;  // dimension, bits
    int t = 0;  // bit-error-correcting radius
    int b = 0;  // Galois field degree
    BchVariant variant = BchVariant::standard;

    // Unshortened length used in the miscorrection-probability ratio.
    int n_full() const {
        switch (variant) {
            case BchVariant::standard: return (1 << b) - 1;
            case BchVariant::extended_hamming: return 1 << b;
            case BchVariant::trivial: return n;
        }
        return n;
    }
};

inline std::string variant_name(BchVariant v) {
    switch (v) {
        case BchVariant::standard: return "standard";
        case BchVariant::extended_hamming: return "extended_hamming";
        case BchVariant::trivial: return "trivial";
    }
    return "?";
}

// M x m matrix of nonnegative symbol counts, row-major.
struct Adjacency {
    int rows = 0, cols = 0;
    std::vector<int> a;

    Adjacency() = default;
    Adjacency(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    int at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    int row_sum(int i) const {
        int s = 0;
        for (int j = 0; j < cols; ++j) s += at(i, j);
        return s;
    }
    int col_sum(int j) const {
        int s = 0;
        for (int i = 0; i < rows; ++i) s += at(i, j);
        return s;
    }
};

struct ConcatSpec {
    RsParams rs;
    BchParams bch;
    int M = 0;  // number of RS codewords
    int m = 0;  // number of BCH codewords
    Adjacency L;
    long long pad_symbols = 0;  // zero-padded symbol slots, all in the last BCH word

    long long info_bits() const {
        return static_cast<long long>(M) * rs.K * rs.B;
    }
    double rate() const {
        return static_cast<double>(info_bits()) / (static_cast<double>(m) * bch.n);
    }
    // Pad slots sit in inner word j; padded bits carry no channel errors.
    long long pad_slots_of_word(int j) const { return j == m - 1 ? pad_symbols : 0; }
    int effective_bits_of_word(int j) const {
        return bch.n - static_cast<int>(pad_slots_of_word(j)) * rs.B;
    }
};

// Builds the standard interleaver's adjacency matrix.  Columns are filled
// left to right up to capacity min(k/B, M*ceil(N/m)) so the shortfall (the
// zero-padding) lands in the trailing inner word(s); within a column the
// symbols are split across RS words as evenly as possible, balancing row
// deficits so every row sums to exactly N.
inline Adjacency build_adjacency(const RsParams& rs, const BchParams& bch, int M, int m,
                                 long long* pad_symbols_out = nullptr) {
    if (M < 1 || m < 1) throw std::invalid_argument("need M >= 1 and m >= 1");
    if (bch.k % rs.B != 0) throw std::invalid_argument("byte size B must divide inner dimension k");
    const long long c = bch.k / rs.B;                       // symbol slots per inner word
    const long long total = static_cast<long long>(M) * rs.N;
    if (total > c * m) throw std::invalid_argument("M*N*B exceeds m*k: interleaver infeasible");

    const long long ceil_nm = (rs.N + m - 1) / m;
    const long long cap = std::min<long long>(c, static_cast<long long>(M) * ceil_nm);

    Adjacency L(M, m);
    std::vector<long long> deficit(M, rs.N);
    long long remaining = total;
    for (int j = 0; j < m && remaining > 0; ++j) {
        const long long tj = std::min(cap, remaining);
        remaining -= tj;
        const long long base = tj / M;
        long long extra = tj % M;
        // rows with the largest deficit get the extra symbol; ties to low index
        std::vector<int> order(M);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return deficit[x] > deficit[y]; });
        for (int i = 0; i < M; ++i) L.at(i, j) = static_cast<int>(base);
        for (int r = 0; r < extra; ++r) L.at(order[r], j) += 1;
        for (int i = 0; i < M; ++i) deficit[i] -= L.at(i, j);
    }
    for (int i = 0; i < M; ++i)
        if (deficit[i] != 0) throw std::logic_error("adjacency builder failed to balance rows");
    if (pad_symbols_out) *pad_symbols_out = c * m - total;
    return L;
}

inline ConcatSpec make_concat_spec(const RsParams& rs, const BchParams& bch, int M, int m) {
    ConcatSpec s;
    s.rs = rs;
    s.bch = bch;
    s.M = M;
    s.m = m;
    s.L = build_adjacency(rs, bch, M, m, &s.pad_symbols);
    return s;
}

// A whole-system spec for a trivial (rate-one) inner code: one synthetic
// inner "word" carrying all M*N*B bits untouched.
inline ConcatSpec make_rs_only_spec(const RsParams& rs, int M) {
    ConcatSpec s;
    s.rs = rs;
    s.bch.variant = BchVariant::trivial;
    s.bch.t = 0;
    s.bch.n = s.bch.k = M * rs.N * rs.B;
    s.bch.b = 0;
    s.M = M;
    s.m = 1;
    s.L = Adjacency(M, 1);
    for (int i = 0; i < M; ++i) s.L.at(i, 0) = rs.N;
    s.pad_symbols = 0;
    return s;
}

// All invariant violations, empty when the spec is consistent.
inline std::vector<std::string> validate(const ConcatSpec& s) {
    std::vector<std::string> v;
    const auto bad = [&v](const std::string& msg) { v.push_back(msg); };

    if (s.rs.B < 2) bad("B must be >= 2");
    if (s.rs.T < 0) bad("T must be >= 0");
    if (s.rs.N < 1 || (s.rs.B >= 2 && s.rs.N > (1 << s.rs.B) - 1))
        bad("need 1 <= N <= 2^B-1");
    if (s.rs.K != s.rs.N - 2 * s.rs.T) bad("K != N - 2T");
    if (s.rs.K < 1) bad("K must be >= 1");

    switch (s.bch.variant) {
        case BchVariant::standard:
            if (s.bch.t < 1) bad("standard BCH needs t >= 1");
            if (s.bch.k != s.bch.n - s.bch.b * s.bch.t) bad("standard BCH needs k = n - b*t");
            if (s.bch.n > (1 << s.bch.b) - 1) bad("standard BCH needs n <= 2^b-1");
            break;
        case BchVariant::extended_hamming:
            if (s.bch.t != 1) bad("extended Hamming needs t = 1");
            if (s.bch.k != s.bch.n - s.bch.b - 1) bad("extended Hamming needs k = n - b - 1");
            if (s.bch.n > (1 << s.bch.b)) bad("extended Hamming needs n <= 2^b");
            break;
        case BchVariant::trivial:
            if (s.bch.t != 0) bad("trivial inner code needs t = 0");
            if (s.bch.k != s.bch.n) bad("trivial inner code needs k = n");
            break;
    }
    if (s.bch.k < 1) bad("inner k must be >= 1");
    if (s.bch.k % s.rs.B != 0) bad("B must divide k");

    if (s.M < 1) bad("M must be >= 1");
    if (s.m < 1) bad("m must be >= 1");
    if (s.L.rows != s.M || s.L.cols != s.m) bad("adjacency matrix shape must be M x m");
    if (!v.empty()) return v;  // shape errors make the rest meaningless

    const long long c = s.bch.k / s.rs.B;
    long long total = 0;
    for (int i = 0; i < s.M; ++i) {
        if (s.L.row_sum(i) != s.rs.N)
            bad("row " + std::to_string(i) + " of L does not sum to N");
    }
    long long prev_shortfall = 0;
    for (int j = 0; j < s.m; ++j) {
        const long long cs = s.L.col_sum(j);
        total += cs;
        if (cs > c) bad("column " + std::to_string(j) + " of L exceeds k/B symbols");
        const long long shortfall = c - cs;
        if (shortfall < prev_shortfall)
            bad("padding not confined to trailing columns (column " + std::to_string(j) + ")");
        prev_shortfall = shortfall;
    }
    if (c * s.m - total != s.pad_symbols)
        bad("pad_symbols inconsistent with adjacency column sums");
    for (int i = 0; i < s.M; ++i)
        for (int j = 0; j < s.m; ++j)
            if (s.L.at(i, j) < 0) bad("negative adjacency entry");
    return v;
}

}  // namespace rsbch
