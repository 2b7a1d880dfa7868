#include "pucoh/graded.hpp"

#include <bit>

namespace pucoh {

RhoSet rho_set(const std::vector<int>& subscripts) {
    RhoSet s = 0;
    for (int k : subscripts) {
        if (k < 1 || k > 62) throw std::invalid_argument("rho_set: subscript out of range");
        if (s & (RhoSet(1) << k)) throw std::invalid_argument("rho_set: repeated subscript");
        s |= RhoSet(1) << k;
    }
    return s;
}

std::vector<int> rho_list(RhoSet s) {
    std::vector<int> out;
    while (s) {
        int k = std::countr_zero(s);
        out.push_back(k);
        s &= s - 1;
    }
    return out;
}

int rho_degree(RhoSet s) {
    int d = 0;
    while (s) {
        int k = std::countr_zero(s);
        d += 2 * k - 1;
        s &= s - 1;
    }
    return d;
}

int merge_sign(RhoSet a, RhoSet b) {
    if (a & b) return 0;
    /* inversions when concatenating ascending a then ascending b */
    int inv = 0;
    RhoSet bb = b;
    while (bb) {
        int k = std::countr_zero(bb);
        inv += std::popcount(a >> (k + 1));
        bb &= bb - 1;
    }
    return inv % 2 ? -1 : 1;
}

/* --- ExtElem --- */

ExtElem ExtElem::generator(int k) { return monomial(1, rho_set({k})); }

ExtElem ExtElem::monomial(const Int& coeff, RhoSet mask) {
    ExtElem e;
    if (coeff != 0) e.terms[mask] = coeff;
    return e;
}

ExtElem& ExtElem::operator+=(const ExtElem& o) {
    for (const auto& [m, c] : o.terms) {
        Int& slot = terms[m];
        slot += c;
        if (slot == 0) terms.erase(m);
    }
    return *this;
}

ExtElem ExtElem::operator*(const ExtElem& o) const {
    ExtElem out;
    for (const auto& [m1, c1] : terms)
        for (const auto& [m2, c2] : o.terms) {
            int s = merge_sign(m1, m2);
            if (!s) continue;
            out += monomial(s * c1 * c2, m1 | m2);
        }
    return out;
}

Degree ExtElem::degree() const {
    if (terms.empty()) return {Degree::zero, 0};
    int d = rho_degree(terms.begin()->first);
    for (const auto& [m, c] : terms)
        if (rho_degree(m) != d) return {Degree::mixed, 0};
    return {Degree::homogeneous, d};
}

/* --- PresElem --- */

bool PresKeyLess::operator()(const PresKey& a, const PresKey& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.omega != b.omega) return a.omega < b.omega;
    /* lexicographic on ascending subscript lists; shorter prefix first */
    RhoSet x = a.rho, y = b.rho;
    while (x && y) {
        int kx = std::countr_zero(x), ky = std::countr_zero(y);
        if (kx != ky) return kx < ky;
        x &= x - 1;
        y &= y - 1;
    }
    return x < y;  /* empty before nonempty */
}

PresElem PresElem::one() { return term(1, 0, 0); }

PresElem PresElem::term(const Rat& coeff, int omega, RhoSet rho) {
    if (omega < 0) throw std::invalid_argument("PresElem: negative omega exponent");
    PresElem e;
    if (coeff != 0) e.terms[{omega, rho}] = coeff;
    return e;
}

PresElem PresElem::omega_power(int a) { return term(1, a, 0); }

PresElem PresElem::rho_single(int k) { return term(1, 0, rho_set({k})); }

PresElem& PresElem::operator+=(const PresElem& o) {
    for (const auto& [k, c] : o.terms) {
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

PresElem& PresElem::operator-=(const PresElem& o) { return *this += -o; }

PresElem PresElem::operator+(const PresElem& o) const {
    PresElem r = *this;
    r += o;
    return r;
}

PresElem PresElem::operator-(const PresElem& o) const {
    PresElem r = *this;
    r -= o;
    return r;
}

PresElem PresElem::operator*(const PresElem& o) const {
    PresElem out;
    for (const auto& [k1, c1] : terms)
        for (const auto& [k2, c2] : o.terms) {
            int s = merge_sign(k1.rho, k2.rho);
            if (!s) continue;
            out += term(Rat(s) * c1 * c2, k1.omega + k2.omega, k1.rho | k2.rho);
        }
    return out;
}

PresElem PresElem::operator*(const Rat& c) const {
    PresElem out;
    if (c == 0) return out;
    for (const auto& [k, v] : terms) out.terms[k] = v * c;
    return out;
}

PresElem PresElem::operator-() const { return *this * Rat(-1); }

Degree PresElem::degree() const {
    if (terms.empty()) return {Degree::zero, 0};
    int d = terms.begin()->first.degree();
    for (const auto& [k, c] : terms)
        if (k.degree() != d) return {Degree::mixed, 0};
    return {Degree::homogeneous, d};
}

bool PresElem::is_integral() const {
    for (const auto& [k, c] : terms)
        if (c.get_den() != 1) return false;
    return true;
}

const PresElem& PresElem::assert_integral() const {
    for (const auto& [k, c] : terms)
        if (c.get_den() != 1) {
            PresElem t = term(c, k.omega, k.rho);
            throw IntegralityError("non-integral term " + to_text(t));
        }
    return *this;
}

std::pair<PresKey, Rat> PresElem::leading_term() const {
    if (terms.empty()) throw std::invalid_argument("leading_term of zero");
    return *terms.begin();
}

PresElem PresElem::normalized() const {
    if (terms.empty()) return *this;
    return terms.begin()->second < 0 ? -*this : *this;
}

/* --- rendering --- */

static std::string coeff_str(const Rat& c) {
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_text(const PresElem& x) {
    if (x.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : x.terms) {
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        first = false;
        std::vector<std::string> factors;
        bool unit = a == 1;
        if (!unit || (k.omega == 0 && k.rho == 0)) factors.push_back(coeff_str(a));
        if (k.omega == 1) factors.push_back("w");
        if (k.omega > 1) factors.push_back("w^" + std::to_string(k.omega));
        if (k.rho) {
            std::string rs;
            for (int j : rho_list(k.rho)) rs += "r" + std::to_string(2 * j - 1);
            factors.push_back(rs);
        }
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) out += "*";
            out += factors[i];
        }
    }
    return out;
}

std::string to_latex(const PresElem& x) {
    if (x.terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : x.terms) {
        Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        first = false;
        std::string body;
        if (k.omega == 1) body += "\\omega ";
        if (k.omega > 1) body += "\\omega ^{" + std::to_string(k.omega) + "}";
        if (k.rho) {
            if (k.omega > 0) body += "\\otimes ";
            for (int j : rho_list(k.rho)) body += "\\rho _{" + std::to_string(2 * j - 1) + "}";
        }
        if (a != 1 || body.empty()) out += coeff_str(a);
        out += body;
    }
    return out;
}

nlohmann::json to_json(const PresElem& x) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, c] : x.terms) {
        nlohmann::json t;
        if (c.get_den() == 1)
            t["coeff"] = c.get_num().get_str();
        else
            t["coeff"] = coeff_str(c);
        t["omega"] = k.omega;
        t["rho"] = rho_list(k.rho);
        arr.push_back(t);
    }
    return arr;
}

PresElem pres_from_json(const nlohmann::json& j) {
    PresElem out;
    for (const auto& t : j) {
        std::string cs = t.at("coeff").get<std::string>();
        Rat c(cs);
        c.canonicalize();
        std::vector<int> rho = t.at("rho").get<std::vector<int>>();
        out += PresElem::term(c, t.at("omega").get<int>(), rho_set(rho));
    }
    return out;
}

}  // namespace pucoh
