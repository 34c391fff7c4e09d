#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "achow/ratfunc.hpp"

namespace achow {

// One of the two face values of a cube coordinate.
enum class FaceJ { Zero, Inf };
inline int sgn_of(FaceJ j) { return j == FaceJ::Zero ? 1 : -1; }

struct FaceId {
    int i = 1;  // 1-based coordinate index
    FaceJ j = FaceJ::Zero;
};

// Absolute Kahler differential form in expanded basis representation: a sum of
// rational-function coefficients times strictly increasing wedges over a fixed
// ordered list of differential directions.
class DiffForm {
public:
    using Wedge = std::vector<uint8_t>;  // indices into basis_, strictly increasing

    DiffForm() = default;
    DiffForm(TablePtr table, std::vector<Symbol> basis);
    static DiffForm scalar(const TablePtr& table, const std::vector<Symbol>& basis,
                           const RatFunc& c);
    // The 1-form d(s) for a basis symbol.
    static DiffForm d_symbol(const TablePtr& table, const std::vector<Symbol>& basis, Symbol s);
    // d f = sum over basis directions of (df/ds) ds.
    static DiffForm d_of(const TablePtr& table, const std::vector<Symbol>& basis, const RatFunc& f);
    static DiffForm dlog(const TablePtr& table, const std::vector<Symbol>& basis, const RatFunc& f);

    const TablePtr& table() const { return table_; }
    const std::vector<Symbol>& basis() const { return basis_; }
    const std::map<Wedge, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int basis_index(Symbol s) const;  // -1 if absent

    DiffForm operator+(const DiffForm& o) const;
    DiffForm operator-(const DiffForm& o) const;
    DiffForm operator*(const RatFunc& c) const;
    DiffForm operator-() const;
    DiffForm wedge(const DiffForm& o) const;

    // Absolute exterior derivative over all basis directions.
    DiffForm d() const;

    // Pullback along the substitution sending each basis symbol to a value
    // with the given differential (a 1-form over the target basis).
    DiffForm pullback(const TablePtr& target_table, const std::vector<Symbol>& target_basis,
                      const std::map<uint32_t, std::pair<RatFunc, DiffForm>>& images) const;

    // Restriction to the face {tsym = j}: terms containing d(tsym) vanish,
    // coefficients are evaluated on the face. Throws MathError if a
    // coefficient has a pole along the face.
    DiffForm restrict_to_face(Symbol tsym, FaceJ j) const;

    // Poincare residue along {tsym = j}: write the form as
    // dlog(local equation) ^ alpha + beta with beta regular and return
    // alpha restricted to the face. Requires at most a simple pole.
    DiffForm poincare_residue(Symbol tsym, FaceJ j) const;

    bool operator==(const DiffForm& o) const;
    bool operator!=(const DiffForm& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    TablePtr table_;
    std::vector<Symbol> basis_;
    std::map<Wedge, RatFunc> terms_;
    void add_term(const Wedge& w, const RatFunc& c);
};

// The increasing enumeration alpha_1(i) < ... < alpha_n(i) of {1..n+1} \ {i}.
std::vector<int> alpha_seq(int n, int i);

// Standard ambient basis x, t1..tN followed by the parameters, over a table
// that contains those names.
std::vector<Symbol> diamond_basis(const TablePtr& table, int N);

// The cyclic (n-1)-form (1-t_l)/x^{m+1} dlog t_{l+1} ^ ... ^ dlog t_{l-1}
// on the ambient space with n cube coordinates.
DiffForm omega(const TablePtr& table, int l, int m, int n);

// The face variant on n+1 cube coordinates, built on the indices alpha_k(i).
DiffForm omega_face(const TablePtr& table, int l, int n, int i, int m);

// Sign relating omega^{n+1}_{alpha_l(i)} to omega_l^n(i) ^ dlog t_i; depends
// on the cyclic distance between i and alpha_l(i).
int cyclic_wedge_sign(int n, int i, int l);

// Verifies omega^{n+1}_{alpha_l(i)} == sign * omega_l^n(i) ^ dlog t_i.
bool check_omega_wedge_identity(int n, int i, int l, int m);

// Verifies the Poincare residue of omega^{n+1}_{alpha_l(i)} along {t_i = j}
// against the restricted face form with its sign.
bool check_poincare_lemma(int n, int i, FaceJ j, int l, int m);

}  // namespace achow
