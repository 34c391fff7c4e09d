#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "achow/places.hpp"

namespace achow {

// Parametrized curve P^1 -> Diamond_n: x(t) and n cube coordinates over k,
// with modulus m along {x = 0}.
struct ParamCurve {
    int n = 0;
    int m = 2;
    Symbol param{};
    RatFunc x;
    std::vector<RatFunc> t;
    void validate() const;  // throws InputError on invariant violations
};

// Parametrized surface in Diamond_{nt} (nt cube coordinates), two parameters.
struct ParamSurface {
    int nt = 0;  // number of cube coordinates; faces live in Diamond_{nt-1}
    int m = 2;
    Symbol pu{}, pv{};
    RatFunc x;
    std::vector<RatFunc> t;
    void validate() const;
};

// Canonicalized closed point of Diamond_{n-1} off the faces. Rational points
// carry their coordinate values; cluster points carry the minimal polynomial
// of a chosen generator of the residue field and every coordinate written on
// the generator's power basis. The presentation is conjugation-invariant.
struct PointKey {
    bool cluster = false;
    std::vector<RatFunc> rat_coords;               // x first, then the t's
    std::vector<RatFunc> minpoly;                  // monic: trailing 1 omitted? kept explicit
    std::vector<std::vector<RatFunc>> gen_coords;  // coordinate = sum c_k g^k
    int compare(const PointKey& o) const;
    bool operator<(const PointKey& o) const { return compare(o) < 0; }
    bool operator==(const PointKey& o) const { return compare(o) == 0; }
    std::string to_string() const;
};

// Z-linear combination of closed points.
class ZeroCycle {
public:
    void add(const PointKey& p, int coeff);
    ZeroCycle operator+(const ZeroCycle& o) const;
    ZeroCycle operator*(int k) const;
    bool is_zero() const { return pts_.empty(); }
    const std::map<PointKey, int>& points() const { return pts_; }
    std::string to_string() const;

private:
    std::map<PointKey, int> pts_;
};

// Z-linear combination of parametrized curves (shared n and m).
struct Cycle {
    struct Term {
        int coeff = 0;
        ParamCurve curve;
        std::string label;
    };
    std::vector<Term> terms;
};

// Modulus data at one place over {x = 0}: r = ord of x, S = indices with
// ord(t_l - 1) >= m r. Exclusive membership is S == {l}; mixed means |S| > 1.
struct PlaceClassEntry {
    Place place;
    int r = 0;
    std::set<int> S;
    bool mixed() const { return S.size() > 1; }
};

struct ModulusClassification {
    std::vector<PlaceClassEntry> entries;
    bool all_nonempty() const;
    std::string to_string() const;
};

// Walks fn over the place, splitting clusters whenever a computation below
// signals non-uniformity.
void for_each_resolved_place(const Place& p, const std::function<void(const Place&)>& fn);

ModulusClassification modulus_classify(const ParamCurve& C);

struct CurveReport {
    bool proper = true;
    bool faces_legal = true;
    bool modulus_ok = true;
    bool sup_effective = true;
    std::vector<std::string> problems;
    ModulusClassification classification;
    bool admissible() const { return proper && faces_legal && modulus_ok; }
    std::string to_string() const;
};

CurveReport check_admissible_curve(const ParamCurve& C);

ZeroCycle boundary_curve(const ParamCurve& C);

struct DegeneracyInfo {
    bool pullback_shape = false;  // x and all but one t constant
    int free_slot = -1;           // 0-based index of the nonconstant coordinate
    int degree = 0;               // mapping degree of that coordinate
    bool degenerate() const { return pullback_shape && degree == 1; }
};

DegeneracyInfo degeneracy_info(const ParamCurve& C);
bool is_degenerate(const ParamCurve& C);

// One face component of a surface: the face curve in Diamond_{nt-1}, its
// intersection multiplicity, and whether it is empty inside the cube (some
// coordinate identically 1) or contracted to a point.
struct FaceCurve {
    ParamCurve curve;
    int multiplicity = 1;
    bool empty_in_box = false;
    bool contracted = false;
    std::string origin;
};

struct SurfaceFaces {
    std::vector<FaceCurve> curves;
    std::vector<std::string> unsolved;  // rendered factors needing user input
};

// Face side {0, infinity}; kept separate from the forms module to avoid a
// header cycle.
enum class FaceSide { Zero, Inf };
inline int face_sign(FaceSide j) { return j == FaceSide::Zero ? 1 : -1; }

// User-supplied parametrization (u(w), v(w)) for a face factor the solver
// cannot handle, keyed by (i, j, rendered factor).
struct UserFaceParam {
    int i = 1;
    FaceSide j = FaceSide::Zero;
    std::string factor;  // canonical rendering of the factor it resolves
    Symbol param{};
    RatFunc u, v;
    int multiplicity = 1;
};

SurfaceFaces surface_faces(const ParamSurface& S, int i, FaceSide j,
                           const std::vector<UserFaceParam>* user = nullptr);

Cycle boundary_surface(const ParamSurface& S, const std::vector<UserFaceParam>* user = nullptr);

// Signed sum of the boundaries of the face curves; exactly zero when d^2 = 0.
ZeroCycle boundary_squared(const ParamSurface& S,
                           const std::vector<UserFaceParam>* user = nullptr);

struct SurfaceComponentVerdict {
    std::string component;
    int r = 0;
    std::set<int> S;
    bool ok() const { return !S.empty(); }
};

struct SurfaceReport {
    bool modulus_ok = true;
    std::vector<SurfaceComponentVerdict> components;
    std::vector<std::string> warnings;  // indeterminacy points on {x = 0}, ...
    std::vector<std::string> problems;
    std::string to_string() const;
};

SurfaceReport check_admissible_surface(const ParamSurface& S);

}  // namespace achow
