#pragma once

// Finite-field GF(2^b) arithmetic in discrete-logarithm representation.
//
// All run-time field operations reduce to integer adds/subtracts and table
// lookups, which an OpCounter tallies as elementary operations:
//   multiply = 1 add + 1 lookup, add = 2 adds + 2 lookups,
//   divide   = 1 add + 2 lookups, rep conversion = 1 lookup.
// Zero is carried through every table as the extended log value 2q-3, so
// multiply/add never branch on zero operands.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsbch {

struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t lookups = 0;

    std::uint64_t total() const { return adds + lookups; }

    void reset() {
        adds = 0;
        lookups = 0;
    }

    OpCounter& operator+=(const OpCounter& o) {
        adds += o.adds;
        lookups += o.lookups;
        return *this;
    }
};

using GfLog = std::int32_t;  // extended discrete log; zero element = 2q-3

// Default primitive polynomials (bitmask includes the x^b term), minimal
// weight, the classic table used by most codec implementations.
inline std::uint32_t default_primitive_poly(int b) {
    static constexpr std::uint32_t polys[] = {
        0,      0,     0x7,    0xB,    0x13,   0x25,   0x43,  0x89,
        0x11D,  0x211, 0x409,  0x805,  0x1053, 0x201B, 0x4443};
    if (b < 2 || b > 14) throw std::invalid_argument("field degree b must be in [2,14]");
    return polys[b];
}

class GfTables {
  public:
    GfTables(int b, std::uint32_t primitive_poly) : b_(b), q_(1u << b), poly_(primitive_poly) {
        if (b < 2 || b > 14) throw std::invalid_argument("field degree b must be in [2,14]");
        if ((primitive_poly >> b) != 1u)
            throw std::invalid_argument("primitive polynomial must have degree b");
        build();
    }

    explicit GfTables(int b) : GfTables(b, default_primitive_poly(b)) {}

    int degree() const { return b_; }
    std::uint32_t size() const { return q_; }
    std::uint32_t primitive_poly() const { return poly_; }
    GfLog zero() const { return zero_log_; }
    GfLog one() const { return 0; }

    bool is_zero(GfLog x) const { return x == zero_log_; }

    // --- representation conversion (1 lookup each way) ---

    GfLog to_log(std::uint32_t poly_rep, OpCounter* c = nullptr) const {
        if (c) c->lookups += 1;
        return log_table_[poly_rep];
    }

    std::uint32_t to_poly(GfLog x, OpCounter* c = nullptr) const {
        if (c) c->lookups += 1;
        return antilog_table_[x];
    }

    // --- field operations on log representation ---

    GfLog mul(GfLog x, GfLog y, OpCounter* c = nullptr) const {
        if (c) {
            c->adds += 1;
            c->lookups += 1;
        }
        return m_table_[x + y];
    }

    GfLog add(GfLog x, GfLog y, OpCounter* c = nullptr) const {
        if (c) {
            c->adds += 2;
            c->lookups += 2;
        }
        return m_table_[x + z_table_[(y - x) + (2 * static_cast<GfLog>(q_) - 3)]];
    }

    GfLog div(GfLog x, GfLog y, OpCounter* c = nullptr) const {
        if (y == zero_log_) throw std::domain_error("GF division by zero");
        if (c) {
            c->adds += 1;
            c->lookups += 2;
        }
        return m_table_[x + i_table_[y]];
    }

    // Multiplicative inverse of a nonzero element as a bare I-table lookup.
    GfLog inv_log(GfLog y, OpCounter* c = nullptr) const {
        if (y == zero_log_) throw std::domain_error("GF inverse of zero");
        if (c) c->lookups += 1;
        return i_table_[y];
    }

    // α^e for an arbitrary integer exponent (table construction / test use,
    // not op-counted).
    GfLog alpha_pow(long long e) const {
        long long m = static_cast<long long>(q_) - 1;
        return static_cast<GfLog>(((e % m) + m) % m);
    }

    // --- root-finding lookup tables (Appendix-style DP2 / DP3 / SQRT) ---

    // Roots of x^2 + x + c.  Either no roots or exactly {r, r+1}.
    struct QuadRoots {
        bool has_roots = false;
        GfLog r0 = 0, r1 = 0;
    };

    QuadRoots solve_quadratic_depressed(GfLog c, OpCounter* cnt = nullptr) const {
        if (cnt) cnt->lookups += 1;
        return dp2_table_[c];
    }

    // Roots of x^3 + x + c (0 to 3 roots).
    struct CubicRoots {
        int count = 0;
        GfLog r[3] = {0, 0, 0};
    };

    CubicRoots solve_cubic_depressed(GfLog c, OpCounter* cnt = nullptr) const {
        if (cnt) cnt->lookups += 1;
        return dp3_table_[c];
    }

    GfLog sqrt(GfLog x, OpCounter* cnt = nullptr) const {
        if (cnt) cnt->lookups += 1;
        return sqrt_table_[x];
    }

    // --- reference polynomial-basis arithmetic (construction & oracles) ---

    std::uint32_t poly_mul(std::uint32_t x, std::uint32_t y) const {
        std::uint32_t r = 0;
        while (y) {
            if (y & 1u) r ^= x;
            y >>= 1;
            x <<= 1;
            if (x & q_) x ^= poly_;
        }
        return r;
    }

    // --- debug dump: one CSV per table, columns "index,value" ---

    std::string dump_csv(const std::string& table) const {
        std::string out = "index,value\n";
        auto emit = [&out](std::size_t i, long long v) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(v);
            out += '\n';
        };
        if (table == "log")
            for (std::size_t i = 0; i < log_table_.size(); ++i) emit(i, log_table_[i]);
        else if (table == "antilog")
            for (std::size_t i = 0; i < antilog_table_.size(); ++i) emit(i, antilog_table_[i]);
        else if (table == "m")
            for (std::size_t i = 0; i < m_table_.size(); ++i) emit(i, m_table_[i]);
        else if (table == "z")
            for (std::size_t i = 0; i < z_table_.size(); ++i) emit(i, z_table_[i]);
        else if (table == "i")
            for (std::size_t i = 0; i < i_table_.size(); ++i) emit(i, i_table_[i]);
        else if (table == "sqrt")
            for (std::size_t i = 0; i < sqrt_table_.size(); ++i) emit(i, sqrt_table_[i]);
        else
            throw std::invalid_argument("unknown table: " + table);
        return out;
    }

    // Raw table access for tests.
    GfLog m_raw(std::size_t i) const { return m_table_[i]; }
    GfLog z_raw(GfLog shift) const { return z_table_[shift + (2 * static_cast<GfLog>(q_) - 3)]; }
    std::size_t m_size() const { return m_table_.size(); }
    std::size_t z_size() const { return z_table_.size(); }
    std::size_t i_size() const { return i_table_.size(); }

  private:
    void build() {
        const GfLog q = static_cast<GfLog>(q_);
        zero_log_ = 2 * q - 3;

        log_table_.assign(q_, 0);
        antilog_table_.assign(2 * q_ - 2, 0);

        // Powers of alpha by shift-and-reduce; a repeat before q-1 steps
        // means the polynomial is not primitive.
        std::uint32_t v = 1;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            if (i > 0 && v == 1)
                throw std::invalid_argument("polynomial is not primitive over GF(2)");
            antilog_table_[i] = v;
            log_table_[v] = static_cast<GfLog>(i);
            v <<= 1;
            if (v & q_) v ^= poly_;
        }
        if (v != 1) throw std::invalid_argument("polynomial is not primitive over GF(2)");
        log_table_[0] = zero_log_;
        for (std::uint32_t i = q_ - 1; i < 2 * q_ - 4; ++i)
            antilog_table_[i] = antilog_table_[i - (q_ - 1)];
        antilog_table_[zero_log_] = 0;

        // M: wraparound map over sums of extended logs, 4q-5 entries.
        m_table_.assign(4 * q_ - 5, 0);
        for (GfLog l = 0; l <= 4 * q - 6; ++l) {
            if (l <= q - 2)
                m_table_[l] = l;
            else if (l <= 2 * q - 4)
                m_table_[l] = l - (q - 1);
            else
                m_table_[l] = zero_log_;
        }

        // Extended Zech table over [-2q+3, 2q-3], 4q-5 entries.
        z_table_.assign(4 * q_ - 5, 0);
        for (GfLog l = -(2 * q - 3); l <= 2 * q - 3; ++l) {
            GfLog zv;
            if (l <= -q + 1)
                zv = l;
            else if (l <= q - 2) {
                std::uint32_t one_plus = 1u ^ antilog_table_[alpha_pow(l)];
                zv = log_table_[one_plus];
            } else
                zv = 0;
            z_table_[l + (2 * q - 3)] = zv;
        }

        // I(j) = -j mod (q-1), q-1 entries.
        i_table_.assign(q_ - 1, 0);
        for (GfLog j = 0; j <= q - 2; ++j) i_table_[j] = (j == 0) ? 0 : (q - 1 - j);

        // DP2/DP3/SQRT tables, indexed by extended log of c.
        dp2_table_.assign(2 * q_ - 2, QuadRoots{});
        dp3_table_.assign(2 * q_ - 2, CubicRoots{});
        sqrt_table_.assign(2 * q_ - 2, 0);
        for (std::uint32_t x = 0; x < q_; ++x) {
            GfLog lx = log_table_[x];
            std::uint32_t x2 = poly_mul(x, x);
            std::uint32_t x3 = poly_mul(x2, x);
            GfLog c2 = log_table_[x2 ^ x];
            dp2_table_[c2].has_roots = true;
            dp2_table_[c2].r0 = lx;
            dp2_table_[c2].r1 = log_table_[x ^ 1u];
            GfLog c3 = log_table_[x3 ^ x];
            auto& cr = dp3_table_[c3];
            if (cr.count < 3) cr.r[cr.count++] = lx;
            sqrt_table_[log_table_[x2]] = lx;
        }
    }

    int b_;
    std::uint32_t q_;
    std::uint32_t poly_;
    GfLog zero_log_ = 0;
    std::vector<GfLog> log_table_;
    std::vector<std::uint32_t> antilog_table_;
    std::vector<GfLog> m_table_;
    std::vector<GfLog> z_table_;
    std::vector<GfLog> i_table_;
    std::vector<QuadRoots> dp2_table_;
    std::vector<CubicRoots> dp3_table_;
    std::vector<GfLog> sqrt_table_;
};

}  // namespace rsbch
