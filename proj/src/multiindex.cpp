#include "pucoh/multiindex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "pucoh/arithmetic.hpp"

namespace pucoh {

MultiIndex parse_multiindex(const std::string& text) {
    MultiIndex out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int v;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_multiindex: bad entry '" + tok + "'");
        }
        if (pos != tok.size()) throw std::invalid_argument("parse_multiindex: bad entry '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("parse_multiindex: empty index");
    return out;
}

std::string format_multiindex(const MultiIndex& idx) {
    std::string s;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(idx[i]);
    }
    return s;
}

void validate_multiindex(const MultiIndex& idx, long n) {
    if (idx.empty()) throw std::invalid_argument("multi-index must be nonempty");
    int prev = 0;
    for (int v : idx) {
        if (v <= prev) throw std::invalid_argument("multi-index must be strictly increasing and positive");
        if (v > n) throw std::invalid_argument("multi-index entry exceeds n");
        prev = v;
    }
}

MultiIndex truncate_top(const MultiIndex& idx) {
    if (idx.empty()) throw std::invalid_argument("truncate_top: empty index");
    return MultiIndex(idx.begin(), idx.end() - 1);
}

SortedIndex sort_with_sign(const std::vector<int>& subscripts) {
    SortedIndex r{subscripts, 1, false};
    /* insertion sort, counting transpositions of odd-degree factors */
    for (size_t i = 1; i < r.sorted.size(); ++i) {
        for (size_t j = i; j > 0 && r.sorted[j - 1] >= r.sorted[j]; --j) {
            if (r.sorted[j - 1] == r.sorted[j]) {
                r.zero = true;
                return r;
            }
            std::swap(r.sorted[j - 1], r.sorted[j]);
            r.sign = -r.sign;
        }
    }
    return r;
}

long PrimePowerSeq::value(int s) const {
    long v = 1;
    for (int i = 0; i < exps[s]; ++i) v *= p;
    return v;
}

std::vector<long> PrimePowerSeq::values() const {
    std::vector<long> out;
    for (size_t s = 0; s < exps.size(); ++s) out.push_back(value(static_cast<int>(s)));
    return out;
}

std::optional<PrimePowerSeq> as_prime_power_seq(long n, const MultiIndex& idx) {
    validate_multiindex(idx, n);
    for (const auto& f : factorize(n)) {
        PrimePowerSeq seq;
        seq.p = f.p;
        seq.rank = f.e;
        bool ok = true;
        for (int v : idx) {
            long w = v;
            int e = 0;
            while (w % f.p == 0) {
                w /= f.p;
                ++e;
            }
            if (w != 1 || e > f.e) {
                ok = false;
                break;
            }
            seq.exps.push_back(e);
        }
        if (ok) return seq;
    }
    return std::nullopt;
}

std::optional<PrimePowerSeq> boundary(const PrimePowerSeq& idx) {
    if (idx.exps.empty()) throw std::invalid_argument("boundary: empty sequence");
    PrimePowerSeq out = idx;
    int k = static_cast<int>(out.exps.size());
    out.exps[k - 1] -= 1;
    if (out.exps[k - 1] < 0) return std::nullopt;
    if (k >= 2 && out.exps[k - 1] == out.exps[k - 2]) return std::nullopt;
    return out;
}

std::vector<PrimePowerSeq> admissible_set(const PrimePowerSeq& idx) {
    int k = static_cast<int>(idx.exps.size());
    if (k < 2) throw std::invalid_argument("admissible_set: need at least two entries");
    std::vector<PrimePowerSeq> out;
    std::vector<int> j(k - 1);  /* j[s-1] ranges over (e_{s-1}, e_s] */
    auto rec = [&](auto&& self, int s) -> void {
        if (s == k) {
            PrimePowerSeq seq;
            seq.p = idx.p;
            seq.rank = idx.rank;
            seq.exps = j;
            out.push_back(seq);
            return;
        }
        for (int v = idx.exps[s - 1] + 1; v <= idx.exps[s]; ++v) {
            j[s - 1] = v;
            self(self, s + 1);
        }
    };
    rec(rec, 1);
    return out;
}

long exponent_drop(const PrimePowerSeq& idx, const PrimePowerSeq& j) {
    if (j.exps.size() + 1 != idx.exps.size())
        throw std::invalid_argument("exponent_drop: size mismatch");
    long total = 0;
    for (size_t s = 0; s < j.exps.size(); ++s) total += idx.exps[s + 1] - j.exps[s];
    return total;
}

Int omega_weight(const PrimePowerSeq& idx, const PrimePowerSeq& j) {
    if (j.exps.size() + 1 != idx.exps.size())
        throw std::invalid_argument("omega_weight: size mismatch");
    Int total = int_pow(idx.p, idx.exps[0]) - 1;
    for (size_t s = 0; s < j.exps.size(); ++s)
        total += int_pow(idx.p, idx.exps[s + 1]) - int_pow(idx.p, j.exps[s]);
    return total;
}

}  // namespace pucoh
