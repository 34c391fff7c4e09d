#include "achow/diff_form.hpp"

#include <algorithm>
#include <sstream>

#include "achow/errors.hpp"
#include "achow/field_poly.hpp"

namespace achow {

DiffForm::DiffForm(TablePtr table, std::vector<Symbol> basis)
    : table_(std::move(table)), basis_(std::move(basis)) {}

DiffForm DiffForm::scalar(const TablePtr& table, const std::vector<Symbol>& basis,
                          const RatFunc& c) {
    DiffForm f(table, basis);
    f.add_term({}, c);
    return f;
}

DiffForm DiffForm::d_symbol(const TablePtr& table, const std::vector<Symbol>& basis, Symbol s) {
    DiffForm f(table, basis);
    int i = f.basis_index(s);
    if (i < 0) throw MathError("symbol not in differential basis");
    f.add_term({static_cast<uint8_t>(i)}, RatFunc::constant(table, Rational(1)));
    return f;
}

DiffForm DiffForm::d_of(const TablePtr& table, const std::vector<Symbol>& basis,
                        const RatFunc& f) {
    DiffForm out(table, basis);
    for (size_t i = 0; i < basis.size(); ++i) {
        RatFunc df = f.derivative(basis[i]);
        if (!df.is_zero()) out.add_term({static_cast<uint8_t>(i)}, df);
    }
    return out;
}

DiffForm DiffForm::dlog(const TablePtr& table, const std::vector<Symbol>& basis,
                        const RatFunc& f) {
    if (f.is_zero()) throw MathError("dlog of zero");
    DiffForm out(table, basis);
    for (size_t i = 0; i < basis.size(); ++i) {
        RatFunc df = f.derivative(basis[i]);
        if (!df.is_zero()) out.add_term({static_cast<uint8_t>(i)}, df / f);
    }
    return out;
}

int DiffForm::basis_index(Symbol s) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] == s) return static_cast<int>(i);
    return -1;
}

void DiffForm::add_term(const Wedge& w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
    DiffForm r = *this;
    if (r.basis_.empty()) {
        r.basis_ = o.basis_;
        r.table_ = o.table_;
    }
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

DiffForm DiffForm::operator-(const DiffForm& o) const { return *this + (-o); }

DiffForm DiffForm::operator-() const {
    DiffForm r(table_, basis_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

DiffForm DiffForm::operator*(const RatFunc& c) const {
    DiffForm r(table_, basis_);
    if (c.is_zero()) return r;
    for (const auto& [w, k] : terms_) r.add_term(w, k * c);
    return r;
}

namespace {

// Merge two strictly increasing wedges; returns false on a repeated index,
// otherwise fills `out` and the permutation sign.
bool merge_wedges(const DiffForm::Wedge& a, const DiffForm::Wedge& b, DiffForm::Wedge& out,
                  int& sign) {
    out.clear();
    sign = 1;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a.
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return true;
}

}  // namespace

DiffForm DiffForm::wedge(const DiffForm& o) const {
    DiffForm r(table_ ? table_ : o.table_, basis_.empty() ? o.basis_ : basis_);
    for (const auto& [w1, c1] : terms_) {
        for (const auto& [w2, c2] : o.terms_) {
            Wedge w;
            int sign;
            if (!merge_wedges(w1, w2, w, sign)) continue;
            RatFunc c = c1 * c2;
            if (sign < 0) c = -c;
            r.add_term(w, c);
        }
    }
    return r;
}

DiffForm DiffForm::d() const {
    DiffForm r(table_, basis_);
    for (const auto& [w, c] : terms_) {
        for (size_t bi = 0; bi < basis_.size(); ++bi) {
            uint8_t b = static_cast<uint8_t>(bi);
            if (std::find(w.begin(), w.end(), b) != w.end()) continue;
            RatFunc dc = c.derivative(basis_[bi]);
            if (dc.is_zero()) continue;
            // Insert b in front: d c ^ e_b ^ w with e_b moved into sorted place.
            Wedge nw;
            nw.reserve(w.size() + 1);
            int sign = 1;
            size_t pos = 0;
            while (pos < w.size() && w[pos] < b) {
                nw.push_back(w[pos]);
                ++pos;
                sign = -sign;
            }
            nw.push_back(b);
            for (size_t k = pos; k < w.size(); ++k) nw.push_back(w[k]);
            r.add_term(nw, sign < 0 ? -dc : dc);
        }
    }
    return r;
}

DiffForm DiffForm::pullback(const TablePtr& target_table,
                            const std::vector<Symbol>& target_basis,
                            const std::map<uint32_t, std::pair<RatFunc, DiffForm>>& images) const {
    DiffForm out(target_table, target_basis);
    std::map<uint32_t, RatFunc> value_map;
    for (const auto& [sym, img] : images) value_map.emplace(sym, img.first);
    for (const auto& [w, c] : terms_) {
        DiffForm term = DiffForm::scalar(target_table, target_basis, c.substitute(value_map));
        for (uint8_t bi : w) {
            auto it = images.find(basis_[bi].idx);
            if (it == images.end()) throw MathError("pullback image missing for a basis symbol");
            term = term.wedge(it->second.second);
            if (term.is_zero()) break;
        }
        out = out + term;
    }
    return out;
}

namespace {

// Value of f on {tsym = infinity}; MathError if the limit is infinite.
RatFunc limit_at_infinity(const RatFunc& f, Symbol tsym) {
    int dn = f.num().degree(tsym);
    int dd = f.den().degree(tsym);
    if (dn > dd) throw MathError("pole along the face at infinity");
    if (dn < dd) return RatFunc::constant(f.table(), Rational(0));
    return RatFunc::from_poly(f.num().leading_coeff_in(tsym)) /
           RatFunc::from_poly(f.den().leading_coeff_in(tsym));
}

RatFunc eval_at_face(const RatFunc& f, Symbol tsym, FaceJ j) {
    if (j == FaceJ::Inf) return limit_at_infinity(f, tsym);
    std::map<uint32_t, RatFunc> sub{{tsym.idx, RatFunc::constant(f.table(), Rational(0))}};
    return f.substitute(sub);
}

}  // namespace

DiffForm DiffForm::restrict_to_face(Symbol tsym, FaceJ j) const {
    int ti = basis_index(tsym);
    DiffForm out(table_, basis_);
    for (const auto& [w, c] : terms_) {
        if (ti >= 0 && std::find(w.begin(), w.end(), static_cast<uint8_t>(ti)) != w.end())
            continue;
        out.add_term(w, eval_at_face(c, tsym, j));
    }
    return out;
}

DiffForm DiffForm::poincare_residue(Symbol tsym, FaceJ j) const {
    int ti_int = basis_index(tsym);
    if (ti_int < 0) throw MathError("face symbol not in differential basis");
    uint8_t ti = static_cast<uint8_t>(ti_int);
    RatFunc t = RatFunc::variable(table_, tsym);
    DiffForm out(table_, basis_);
    for (const auto& [w, c] : terms_) {
        auto pos = std::find(w.begin(), w.end(), ti);
        if (pos == w.end()) {
            // Must be regular along the face; contributes nothing.
            eval_at_face(c, tsym, j);  // throws on a pole
            continue;
        }
        int sign = (std::distance(w.begin(), pos) % 2 == 0) ? 1 : -1;
        Wedge rest;
        for (uint8_t b : w)
            if (b != ti) rest.push_back(b);
        // c dt = (c * t) dlog t = -(c * t) dlog s at infinity (s = 1/t);
        // at a finite face, c dt = (c * (t - j)) dlog(t - j).
        RatFunc scaled = c * t;  // finite face value j is always 0 here
        RatFunc val;
        if (j == FaceJ::Inf) {
            val = limit_at_infinity(-scaled, tsym);
        } else {
            std::map<uint32_t, RatFunc> sub{{tsym.idx, RatFunc::constant(table_, Rational(0))}};
            val = scaled.substitute(sub);
        }
        out.add_term(rest, sign < 0 ? -val : val);
    }
    return out;
}

bool DiffForm::operator==(const DiffForm& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || it->second != jt->second) return false;
    }
    return true;
}

std::string DiffForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (uint8_t b : w) os << " ^ d" << table_->name(basis_[b]);
    }
    return os.str();
}

std::vector<int> alpha_seq(int n, int i) {
    std::vector<int> out;
    for (int k = 1; k <= n + 1; ++k)
        if (k != i) out.push_back(k);
    return out;
}

std::vector<Symbol> diamond_basis(const TablePtr& table, int N) {
    std::vector<Symbol> basis;
    basis.push_back(table->require("x"));
    for (int k = 1; k <= N; ++k) basis.push_back(table->require("t" + std::to_string(k)));
    for (const auto& p : table->params()) basis.push_back(p);
    return basis;
}

namespace {

DiffForm omega_on_indices(const TablePtr& table, const std::vector<Symbol>& basis,
                          const std::vector<int>& tindices, int pos, int m) {
    // (1 - t_{tindices[pos]})/x^{m+1} dlog t_{next} ^ ... cyclically.
    int n = static_cast<int>(tindices.size());
    Symbol x = table->require("x");
    auto tsym = [&](int k) { return table->require("t" + std::to_string(tindices[k])); };
    RatFunc one = RatFunc::constant(table, Rational(1));
    RatFunc coeff = (one - RatFunc::variable(table, tsym(pos))) /
                    RatFunc::variable(table, x).pow(m + 1);
    DiffForm form = DiffForm::scalar(table, basis, coeff);
    for (int step = 1; step < n; ++step) {
        int k = (pos + step) % n;
        form = form.wedge(DiffForm::dlog(table, basis, RatFunc::variable(table, tsym(k))));
    }
    return form;
}

}  // namespace

DiffForm omega(const TablePtr& table, int l, int m, int n) {
    if (l < 1 || l > n || n < 2 || m < 2) throw MathError("omega: index out of range");
    std::vector<int> idx;
    for (int k = 1; k <= n; ++k) idx.push_back(k);
    return omega_on_indices(table, diamond_basis(table, n), idx, l - 1, m);
}

DiffForm omega_face(const TablePtr& table, int l, int n, int i, int m) {
    if (l < 1 || l > n || i < 1 || i > n + 1) throw MathError("omega_face: index out of range");
    return omega_on_indices(table, diamond_basis(table, n + 1), alpha_seq(n, i), l - 1, m);
}

int cyclic_wedge_sign(int n, int i, int l) {
    std::vector<int> alpha = alpha_seq(n, i);
    int lp = alpha[static_cast<size_t>(l - 1)];
    int d = ((i - lp) % (n + 1) + (n + 1)) % (n + 1);
    return (n - d) % 2 == 0 ? 1 : -1;
}

bool check_omega_wedge_identity(int n, int i, int l, int m) {
    std::vector<std::string> vars{"x"};
    for (int k = 1; k <= n + 1; ++k) vars.push_back("t" + std::to_string(k));
    TablePtr table = make_table({}, vars);
    std::vector<int> alpha = alpha_seq(n, i);
    DiffForm lhs = omega(table, alpha[static_cast<size_t>(l - 1)], m, n + 1);
    Symbol ti = table->require("t" + std::to_string(i));
    DiffForm rhs = omega_face(table, l, n, i, m)
                       .wedge(DiffForm::dlog(table, diamond_basis(table, n + 1),
                                             RatFunc::variable(table, ti)));
    int sign = cyclic_wedge_sign(n, i, l);
    if (sign < 0) rhs = -rhs;
    return lhs == rhs;
}

bool check_poincare_lemma(int n, int i, FaceJ j, int l, int m) {
    std::vector<std::string> vars{"x"};
    for (int k = 1; k <= n + 1; ++k) vars.push_back("t" + std::to_string(k));
    TablePtr table = make_table({}, vars);
    std::vector<int> alpha = alpha_seq(n, i);
    Symbol ti = table->require("t" + std::to_string(i));
    DiffForm big = omega(table, alpha[static_cast<size_t>(l - 1)], m, n + 1);
    DiffForm res = big.poincare_residue(ti, j);
    DiffForm expected = omega_face(table, l, n, i, m).restrict_to_face(ti, j);
    int sign = sgn_of(j) * cyclic_wedge_sign(n, i, l) * ((n - 1) % 2 == 0 ? 1 : -1);
    if (sign < 0) expected = -expected;
    return res == expected;
}

}  // namespace achow
