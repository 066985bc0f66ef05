#pragma once

// Analytic post-FEC frame/bit error rate prediction for a concatenated
// spec on the BSC, and crossover-probability inversion at a target FER.
//
// Per inner word j the channel weight pmf is pushed through the decoder
// model, then mapped to per-strip byte-error pmfs via the conditional
// tables of weightgf; the per-RS-word byte-error count Y_i is the
// convolution over the independent inner words.  The union bound sums
// Pr(Y_i > T).  All pmfs are truncated: bit weights beyond a cap whose
// binomial tail is < tail_bound, and byte weights beyond T+slack, which
// fold into an absorbing overflow bucket that counts as "> T".

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsbch/codespec.hpp"
#include "rsbch/transfer.hpp"
#include "rsbch/weightgf.hpp"

namespace rsbch {

struct PredictionResult {
    double p = 0.0;
    double fer_bound = 0.0;                // union bound incl. truncation penalty
    double fer_lower = 0.0;                // same sum without the penalty
    std::vector<double> per_rs_overflow;   // Pr(Y_i > T), one per RS word
    std::optional<double> ber;
    double truncation_penalty = 0.0;
};

struct CrossoverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Predictor {
  public:
    Predictor(const ConcatSpec& spec, DecoderModel model,
              StripTableCache* cache = &global_strip_cache(), int slack = 64,
              double tail_bound = 1e-30)
        : spec_(spec), model_(model), cache_(cache), slack_(slack), tail_bound_(tail_bound) {
        auto violations = validate(spec);
        if (!violations.empty())
            throw std::invalid_argument("invalid spec: " + violations.front());
        cap_ = std::min(spec_.rs.N, spec_.rs.T + slack_);  // top real byte-error count
    }

    const ConcatSpec& spec() const { return spec_; }
    const DecoderModel& model() const { return model_; }

    // Byte-error pmf seen by RS word i (buckets 0..cap, cap+1 = overflow).
    std::vector<double> rs_input_pmf(double p, int i) const {
        auto words = word_pmfs(p);
        return row_pmf(i, words);
    }

    PredictionResult fer_union_bound(double p, bool with_ber = false) const {
        PredictionResult res;
        res.p = p;
        const auto words = word_pmfs(p);

        double word_tail_sum = 0.0;
        for (const auto& w : words) word_tail_sum += w.tail;

        // identical rows share one convolution
        std::map<std::string, std::pair<double, double>> row_cache;  // sig -> (tail, mean_above_T)
        res.per_rs_overflow.assign(spec_.M, 0.0);
        double fer = 0.0, ber_sum = 0.0;
        for (int i = 0; i < spec_.M; ++i) {
            const std::string sig = row_signature(i);
            auto it = row_cache.find(sig);
            if (it == row_cache.end()) {
                const auto pmf = row_pmf(i, words);
                double tail = 0.0, mean_above = 0.0;
                // smallest terms first: the pmf decays beyond the bulk
                mean_above += static_cast<double>(cap_ + 1) * pmf[cap_ + 1];
                tail += pmf[cap_ + 1];
                for (int v = cap_; v > spec_.rs.T; --v) {
                    tail += pmf[v];
                    mean_above += static_cast<double>(v) * pmf[v];
                }
                it = row_cache.emplace(sig, std::make_pair(tail, mean_above)).first;
            }
            res.per_rs_overflow[i] = it->second.first + word_tail_sum;
            fer += it->second.first;
            ber_sum += it->second.second;
        }
        res.truncation_penalty = spec_.M * word_tail_sum;
        res.fer_lower = fer;
        res.fer_bound = fer + res.truncation_penalty;
        if (with_ber) {
            const double B = spec_.rs.B;
            const double pz = -std::expm1(B * std::log1p(-p));  // Pr(Z > 0)
            const double ez_given = (p == 0.0 || pz == 0.0) ? 1.0 : B * p / pz;
            res.ber = ber_sum * ez_given /
                      (static_cast<double>(spec_.M) * spec_.rs.N * spec_.rs.B);
        }
        return res;
    }

    double post_fec_ber(double p) const {
        return *fer_union_bound(p, true).ber;
    }

    // Bisection on log p until the predicted FER matches the target within
    // 1e-4 in log10.  Brackets are found adaptively so evaluations stay in
    // the regime where the truncated pmfs are sharp.
    double find_crossover(double target_fer, double hint = 0.0, int max_iter = 80) const {
        if (!(target_fer > 0.0 && target_fer < 1.0))
            throw std::invalid_argument("target FER must be in (0,1)");
        const double log_target = std::log10(target_fer);
        const double p_min = 1e-12, p_max = 0.5;

        auto fer_at = [&](double p) { return fer_union_bound(p).fer_bound; };

        double hi = (hint > 0.0) ? std::min(p_max, hint * 4.0) : 1e-2;
        double f_hi = fer_at(hi);
        while (f_hi < target_fer && hi < p_max) {
            hi = std::min(p_max, hi * 4.0);
            f_hi = fer_at(hi);
        }
        if (f_hi < target_fer)
            throw CrossoverError("target FER not reachable below p = 0.5");
        double lo = hi / 4.0;
        double f_lo = fer_at(lo);
        while (f_lo >= target_fer) {
            lo /= 4.0;
            if (lo < p_min) throw CrossoverError("target FER not reachable above p = 1e-12");
            f_lo = fer_at(lo);
        }

        double mid = std::sqrt(lo * hi);
        for (int it = 0; it < max_iter; ++it) {
            mid = std::sqrt(lo * hi);
            const double f = fer_at(mid);
            if (f > 0.0 && std::fabs(std::log10(f) - log_target) < 1e-4) return mid;
            if (f >= target_fer)
                hi = mid;
            else
                lo = mid;
        }
        return mid;
    }

    // CSV sweep over a p grid: "p,fer_bound,ber" rows.
    std::string sweep_csv(const std::vector<double>& p_grid) const {
        std::ostringstream os;
        os << "p,fer_bound,ber\n";
        os.precision(10);
        for (double p : p_grid) {
            auto r = fer_union_bound(p, true);
            os << p << ',' << r.fer_bound << ',' << *r.ber << '\n';
        }
        return os.str();
    }

  private:
    struct WordPmf {
        int n_eff = 0;
        WeightPmf out;     // decoder-output weight pmf (truncated support)
        double tail = 0.0; // channel mass beyond the truncation cap
    };

    // Decoder-output weight pmfs for the distinct inner words (all words
    // share one shape except a padded last word).
    std::vector<WordPmf> word_pmfs(double p) const {
        std::vector<WordPmf> words(spec_.m);
        std::map<int, WordPmf> by_neff;
        for (int j = 0; j < spec_.m; ++j) {
            const int n_eff = spec_.effective_bits_of_word(j);
            auto it = by_neff.find(n_eff);
            if (it == by_neff.end()) {
                WordPmf w;
                w.n_eff = n_eff;
                const int cap = bsc_ell_cap(n_eff, p, tail_bound_);
                WeightPmf chan = bsc_weight_pmf_truncated(n_eff, p, cap);
                w.tail = chan.tail_mass;
                w.out = decoder_output_pmf(chan, model_);
                it = by_neff.emplace(n_eff, std::move(w)).first;
            }
            words[j] = it->second;
        }
        return words;
    }

    std::string row_signature(int i) const {
        // multiset of (strip length, effective word bits)
        std::map<std::pair<int, int>, int> groups;
        for (int j = 0; j < spec_.m; ++j) {
            const int L = spec_.L.at(i, j);
            if (L > 0) groups[{L, spec_.effective_bits_of_word(j)}]++;
        }
        std::string s;
        for (const auto& [key, cnt] : groups)
            s += std::to_string(key.first) + ":" + std::to_string(key.second) + "x" +
                 std::to_string(cnt) + ";";
        return s;
    }

    // pmf over buckets 0..cap_ plus absorbing overflow bucket cap_+1
    std::vector<double> row_pmf(int i, const std::vector<WordPmf>& words) const {
        std::map<std::pair<int, int>, int> groups;
        for (int j = 0; j < spec_.m; ++j) {
            const int L = spec_.L.at(i, j);
            if (L > 0) groups[{L, words[j].n_eff}]++;
        }
        std::vector<double> acc{1.0};
        acc.resize(cap_ + 2, 0.0);
        for (const auto& [key, cnt] : groups) {
            const auto strip = strip_pmf(key.first, key.second, words);
            auto powed = pmf_power(strip, cnt);
            acc = convolve(acc, powed);
        }
        return acc;
    }

    std::vector<double> strip_pmf(int L, int n_eff, const std::vector<WordPmf>& words) const {
        const WordPmf* w = nullptr;
        for (const auto& cand : words)
            if (cand.n_eff == n_eff) {
                w = &cand;
                break;
            }
        const int umax = w->out.n;
        auto table = cache_->get(spec_.rs.B, L, n_eff, umax, cap_ + 1);
        std::vector<double> pmf(cap_ + 2, 0.0);
        const int vtop = table->vcap;  // table buckets 0..vtop
        for (int l = 0; l <= umax; ++l) {
            const double mass = w->out.p_of[l];
            if (mass == 0.0) continue;
            const auto& row = table->q[std::min(l, table->ell_cap)];
            for (int v = 0; v <= vtop; ++v) pmf[std::min(v, cap_ + 1)] += mass * row[v];
        }
        return pmf;
    }

    std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) const {
        const int of = cap_ + 1;
        std::vector<double> out(cap_ + 2, 0.0);
        for (int x = 0; x <= of; ++x) {
            if (a[x] == 0.0) continue;
            for (int y = 0; y <= of; ++y) {
                if (b[y] == 0.0) continue;
                const int k = (x == of || y == of || x + y > cap_) ? of : x + y;
                out[k] += a[x] * b[y];
            }
        }
        return out;
    }

    std::vector<double> pmf_power(std::vector<double> base, int e) const {
        std::vector<double> r(cap_ + 2, 0.0);
        r[0] = 1.0;
        while (e > 0) {
            if (e & 1) r = convolve(r, base);
            e >>= 1;
            if (e) base = convolve(base, base);
        }
        return r;
    }

    ConcatSpec spec_;
    DecoderModel model_;
    StripTableCache* cache_;
    int slack_;
    double tail_bound_;
    int cap_ = 0;
};

}  // namespace rsbch
