#include "achow/cycles.hpp"

#include <algorithm>
#include <sstream>

#include "achow/errors.hpp"

namespace achow {

namespace {

RatFunc rf_const(const TablePtr& table, long v) { return RatFunc::constant(table, Rational(v)); }

RatFunc coord_minus_one(const RatFunc& f) {
    return f - rf_const(f.table(), 1);
}

// Value of f on {sym = infinity}; nullopt when the limit is infinite.
std::optional<RatFunc> limit_at_inf(const RatFunc& f, Symbol sym) {
    int dn = f.num().degree(sym);
    int dd = f.den().degree(sym);
    if (dn > dd) return std::nullopt;
    if (dn < dd) return rf_const(f.table(), 0);
    return RatFunc::from_poly(f.num().leading_coeff_in(sym)) /
           RatFunc::from_poly(f.den().leading_coeff_in(sym));
}

struct SubstResult {
    bool infinite = false;
    bool indeterminate = false;
    RatFunc v;
};

// Substitution that distinguishes poles (den -> 0, num != 0) from genuine
// indeterminacy (both -> 0) instead of throwing.
SubstResult substitute_checked(const RatFunc& f, const std::map<uint32_t, RatFunc>& images) {
    SubstResult out;
    RatFunc n = RatFunc::from_poly(f.num()).substitute(images);
    RatFunc d = RatFunc::from_poly(f.den()).substitute(images);
    if (d.is_zero()) {
        if (n.is_zero())
            out.indeterminate = true;
        else
            out.infinite = true;
        return out;
    }
    out.v = n / d;
    return out;
}

// Gaussian elimination over the exact coefficient field. Returns nullopt when
// the system M x = rhs (rows x cols, rows >= cols) is inconsistent.
std::optional<std::vector<RatFunc>> solve_linear(std::vector<std::vector<RatFunc>> M,
                                                 std::vector<RatFunc> rhs,
                                                 const TablePtr& table) {
    size_t rows = M.size();
    size_t cols = rows ? M[0].size() : 0;
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && M[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(M[p], M[rank]);
        std::swap(rhs[p], rhs[rank]);
        RatFunc inv = M[rank][c].inverse();
        for (size_t cc = c; cc < cols; ++cc) M[rank][cc] = M[rank][cc] * inv;
        rhs[rank] = rhs[rank] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][c].is_zero()) continue;
            RatFunc f = M[r][c];
            for (size_t cc = c; cc < cols; ++cc) M[r][cc] = M[r][cc] - f * M[rank][cc];
            rhs[r] = rhs[r] - f * rhs[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!rhs[r].is_zero()) return std::nullopt;
    std::vector<RatFunc> x(cols, rf_const(table, 0));
    for (size_t k = 0; k < rank; ++k) x[pivot_col[k]] = rhs[k];
    return x;
}

std::vector<RatFunc> quotient_coeff_vector(const QuotientElem& e, int d) {
    std::vector<RatFunc> out;
    for (int k = 0; k < d; ++k) out.push_back(e.rep().coeff(static_cast<size_t>(k)));
    return out;
}

// Minimal polynomial of g over k via Newton identities applied to the traces
// of its powers; exact in characteristic zero.
FieldPoly minimal_polynomial(const QuotientElem& g) {
    const FieldPoly& q = g.modulus();
    const TablePtr& table = q.table();
    int d = q.deg();
    std::vector<RatFunc> p(static_cast<size_t>(d + 1), rf_const(table, 0));
    QuotientElem pw = QuotientElem::from_scalar(g.modulus_ptr(), rf_const(table, 1));
    for (int k = 1; k <= d; ++k) {
        pw = pw * g;
        p[static_cast<size_t>(k)] = pw.trace();
    }
    std::vector<RatFunc> e(static_cast<size_t>(d + 1), rf_const(table, 0));
    e[0] = rf_const(table, 1);
    for (int k = 1; k <= d; ++k) {
        RatFunc acc = rf_const(table, 0);
        for (int i = 1; i <= k; ++i) {
            RatFunc term = e[static_cast<size_t>(k - i)] * p[static_cast<size_t>(i)];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        e[static_cast<size_t>(k)] = acc * RatFunc::constant(table, Rational(1, k));
    }
    std::vector<RatFunc> cs(static_cast<size_t>(d + 1), rf_const(table, 0));
    for (int k = 0; k <= d; ++k) {
        RatFunc c = e[static_cast<size_t>(k)];
        if (k % 2 == 1) c = -c;
        cs[static_cast<size_t>(d - k)] = c;
    }
    FieldPoly charpoly(table, q.var(), cs);
    FieldPoly gcd = FieldPoly::gcd(charpoly, charpoly.derivative());
    if (gcd.deg() <= 0) return charpoly.monic();
    return charpoly.divrem(gcd).first.monic();
}

// Canonical presentation of the closed point with residue data in
// k[theta]/(mod): choose a generator among the coordinates (or small integer
// combinations), take its minimal polynomial, and express every coordinate on
// the generator's power basis. Returns the key and the pushforward
// multiplicity [k(place) : k(point)].
std::pair<PointKey, int> canonical_cluster_point(const std::shared_ptr<const FieldPoly>& mod,
                                                 const std::vector<QuotientElem>& vals) {
    const TablePtr& table = mod->table();
    int d = mod->deg();
    bool all_rational = true;
    for (const auto& v : vals)
        if (v.rep().deg() > 0) all_rational = false;
    if (all_rational) {
        PointKey key;
        for (const auto& v : vals) key.rat_coords.push_back(v.rep().coeff(0));
        return {key, d};
    }

    std::vector<QuotientElem> candidates;
    for (const auto& v : vals)
        if (v.rep().deg() > 0) candidates.push_back(v);
    size_t single = candidates.size();
    for (size_t i = 0; i < single; ++i)
        for (size_t j = i + 1; j < single; ++j)
            for (long w : {1L, 2L, 3L})
                candidates.push_back(candidates[i] + candidates[j] * rf_const(table, w));

    FieldPoly best_mp;
    std::optional<QuotientElem> best;
    for (const auto& g : candidates) {
        FieldPoly mp = minimal_polynomial(g);
        if (!best || mp.deg() > best_mp.deg()) {
            best = g;
            best_mp = mp;
        }
        if (best_mp.deg() == d) break;
    }
    int dp = best_mp.deg();
    if (dp < 1 || d % dp != 0)
        throw CapabilityError("cannot canonicalize closed point (split the cluster first)");

    // Power basis of the generator inside k[theta]/(mod).
    std::vector<std::vector<RatFunc>> basis_cols;
    QuotientElem pw = QuotientElem::from_scalar(mod, rf_const(table, 1));
    for (int k = 0; k < dp; ++k) {
        if (k > 0) pw = pw * *best;
        basis_cols.push_back(quotient_coeff_vector(pw, d));
    }
    PointKey key;
    key.cluster = true;
    for (int k = 0; k <= dp; ++k) key.minpoly.push_back(best_mp.coeff(static_cast<size_t>(k)));
    for (const auto& v : vals) {
        std::vector<std::vector<RatFunc>> M(static_cast<size_t>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < dp; ++c)
                M[static_cast<size_t>(r)].push_back(basis_cols[static_cast<size_t>(c)]
                                                              [static_cast<size_t>(r)]);
        auto sol = solve_linear(M, quotient_coeff_vector(v, d), table);
        if (!sol)
            throw CapabilityError(
                "closed point coordinates do not lie in the chosen residue field");
        key.gen_coords.push_back(*sol);
    }
    return {key, d / dp};
}

std::pair<PointKey, int> make_point(const std::vector<RatFunc>& coords, const Place& p) {
    if (p.kind() == Place::Kind::FiniteCluster) {
        std::vector<QuotientElem> vals;
        for (const auto& c : coords) {
            PlaceValue v = evaluate_at_place(c, p);
            if (v.infinite) throw MathError("face point leaves the affine range");
            vals.push_back(v.q);
        }
        return canonical_cluster_point(p.poly_ptr(), vals);
    }
    PointKey key;
    for (const auto& c : coords) {
        PlaceValue v = evaluate_at_place(c, p);
        if (v.infinite) throw MathError("face point leaves the affine range");
        key.rat_coords.push_back(v.v);
    }
    return {key, 1};
}

int compare_vec(const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
    }
    return 0;
}

}  // namespace

void ParamCurve::validate() const {
    if (n < 1) throw InputError("curve needs at least one cube coordinate");
    if (m < 2) throw InputError("modulus must be at least 2");
    if (static_cast<int>(t.size()) != n) throw InputError("coordinate count mismatch");
    if (x.is_zero()) throw InputError("x-coordinate is identically zero");
    bool nonconst = x.involves(param);
    for (const auto& ti : t) {
        if (ti.is_zero()) throw InputError("a cube coordinate is identically 0");
        if (ti.is_one()) throw InputError("a cube coordinate is identically 1");
        nonconst = nonconst || ti.involves(param);
    }
    if (!nonconst) throw InputError("parametrization is constant");
}

void ParamSurface::validate() const {
    if (nt < 2) throw InputError("surface needs at least two cube coordinates");
    if (m < 2) throw InputError("modulus must be at least 2");
    if (static_cast<int>(t.size()) != nt) throw InputError("coordinate count mismatch");
    if (x.is_zero()) throw InputError("x-coordinate is identically zero");
    for (const auto& ti : t) {
        if (ti.is_zero()) throw InputError("a cube coordinate is identically 0");
        if (ti.is_one()) throw InputError("a cube coordinate is identically 1");
    }
}

int PointKey::compare(const PointKey& o) const {
    if (cluster != o.cluster) return cluster ? 1 : -1;
    if (!cluster) return compare_vec(rat_coords, o.rat_coords);
    int c = compare_vec(minpoly, o.minpoly);
    if (c != 0) return c;
    if (gen_coords.size() != o.gen_coords.size())
        return gen_coords.size() < o.gen_coords.size() ? -1 : 1;
    for (size_t i = 0; i < gen_coords.size(); ++i) {
        c = compare_vec(gen_coords[i], o.gen_coords[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string PointKey::to_string() const {
    std::ostringstream os;
    if (!cluster) {
        os << "(";
        for (size_t i = 0; i < rat_coords.size(); ++i) {
            if (i) os << ", ";
            os << rat_coords[i].to_string();
        }
        os << ")";
        return os.str();
    }
    os << "[minpoly ";
    for (size_t k = 0; k < minpoly.size(); ++k) {
        if (k) os << ", ";
        os << minpoly[k].to_string();
    }
    os << "; coords";
    for (const auto& gc : gen_coords) {
        os << " (";
        for (size_t k = 0; k < gc.size(); ++k) {
            if (k) os << ", ";
            os << gc[k].to_string();
        }
        os << ")";
    }
    os << "]";
    return os.str();
}

void ZeroCycle::add(const PointKey& p, int coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = pts_.emplace(p, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) pts_.erase(it);
    }
}

ZeroCycle ZeroCycle::operator+(const ZeroCycle& o) const {
    ZeroCycle r = *this;
    for (const auto& [p, k] : o.pts_) r.add(p, k);
    return r;
}

ZeroCycle ZeroCycle::operator*(int k) const {
    ZeroCycle r;
    if (k == 0) return r;
    for (const auto& [p, c] : pts_) r.pts_.emplace(p, c * k);
    return r;
}

std::string ZeroCycle::to_string() const {
    if (pts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, k] : pts_) {
        if (first) {
            if (k < 0) os << "-";
        } else {
            os << (k < 0 ? " - " : " + ");
        }
        first = false;
        int a = std::abs(k);
        if (a != 1) os << a << "*";
        os << p.to_string();
    }
    return os.str();
}

bool ModulusClassification::all_nonempty() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const PlaceClassEntry& e) { return !e.S.empty(); });
}

std::string ModulusClassification::to_string() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << e.place.to_string() << ": r=" << e.r << " S={";
        bool first = true;
        for (int l : e.S) {
            if (!first) os << ",";
            first = false;
            os << l;
        }
        os << "}" << (e.mixed() ? " mixed" : "") << "\n";
    }
    if (entries.empty()) os << "(no places over x=0)\n";
    return os.str();
}

void for_each_resolved_place(const Place& p, const std::function<void(const Place&)>& fn) {
    std::vector<Place> work{p};
    while (!work.empty()) {
        Place cur = work.back();
        work.pop_back();
        try {
            fn(cur);
        } catch (const ClusterSplitNeeded& s) {
            if (cur.kind() != Place::Kind::FiniteCluster)
                throw MathError("cluster split requested at a non-cluster place");
            FieldPoly g = s.factor.monic();
            if (g.deg() < 1 || g.deg() >= cur.poly().deg())
                throw MathError("invalid cluster split factor");
            FieldPoly rest = cur.poly().divrem(g).first;
            work.push_back(Place::cluster(g));
            work.push_back(Place::cluster(rest));
        }
    }
}

ModulusClassification modulus_classify(const ParamCurve& C) {
    C.validate();
    ModulusClassification mc;
    Divisor zeros = principal_divisor(C.x, C.param).positive_part();
    for (const auto& [p0, r0] : zeros.coeffs()) {
        (void)r0;
        for_each_resolved_place(p0, [&](const Place& p) {
            PlaceClassEntry e;
            e.place = p;
            e.r = ord_at(C.x, p);
            for (int l = 1; l <= C.n; ++l) {
                RatFunc g = coord_minus_one(C.t[static_cast<size_t>(l - 1)]);
                if (g.is_zero()) throw InputError("a cube coordinate is identically 1");
                if (ord_at(g, p) >= C.m * e.r) e.S.insert(l);
            }
            mc.entries.push_back(std::move(e));
        });
    }
    return mc;
}

namespace {

// Solutions of t_i = j on the curve, restricted to places where x stays
// finite (points off the closure are not on the normalized curve).
std::vector<std::pair<Place, int>> curve_face_solutions(const ParamCurve& C, int i, FaceSide j) {
    Divisor d = principal_divisor(C.t[static_cast<size_t>(i - 1)], C.param);
    std::vector<std::pair<Place, int>> out;
    for (const auto& [p, k] : d.coeffs()) {
        int mult = j == FaceSide::Zero ? k : -k;
        if (mult <= 0) continue;
        for_each_resolved_place(p, [&](const Place& q) {
            PlaceValue xv = evaluate_at_place(C.x, q);
            if (xv.infinite) return;  // not a point of the normalized curve
            out.emplace_back(q, mult);
        });
    }
    return out;
}

bool places_overlap(const Place& a, const Place& b) {
    if (a == b) return true;
    if (a.var() != b.var()) return false;
    auto root_on = [](const Place& cl, const Place& rat) {
        return cl.kind() == Place::Kind::FiniteCluster &&
               rat.kind() == Place::Kind::FiniteRational &&
               cl.poly().eval(rat.value()).is_zero();
    };
    if (root_on(a, b) || root_on(b, a)) return true;
    if (a.kind() == Place::Kind::FiniteCluster && b.kind() == Place::Kind::FiniteCluster)
        return FieldPoly::gcd(a.poly(), b.poly()).deg() > 0;
    return false;
}

// Effective pullback of {f = 0} to the curve: zeros of f at places where x is
// finite.
Divisor effective_pullback(const RatFunc& f, const ParamCurve& C) {
    Divisor out;
    Divisor d = principal_divisor(f, C.param);
    for (const auto& [p, k] : d.coeffs()) {
        if (k <= 0) continue;
        PlaceValue xv = evaluate_at_place(C.x, p);
        if (xv.infinite) continue;
        out.add(p, k);
    }
    return out;
}

}  // namespace

ZeroCycle boundary_curve(const ParamCurve& C) {
    C.validate();
    ZeroCycle out;
    for (int i = 1; i <= C.n; ++i) {
        for (FaceSide j : {FaceSide::Zero, FaceSide::Inf}) {
            for (const auto& [p0, mult] : curve_face_solutions(C, i, j)) {
                for_each_resolved_place(p0, [&](const Place& p) {
                    // Point in c_0: x finite and nonzero, other coordinates
                    // off {0, 1, infinity}.
                    PlaceValue xv = evaluate_at_place(C.x, p);
                    if (xv.infinite) return;
                    if (xv.is_zero()) throw MathError("face point lies on {x=0}");
                    std::vector<RatFunc> coords{C.x};
                    for (int k = 1; k <= C.n; ++k) {
                        if (k == i) continue;
                        const RatFunc& tk = C.t[static_cast<size_t>(k - 1)];
                        PlaceValue tv = evaluate_at_place(tk, p);
                        if (tv.infinite || tv.is_zero())
                            throw MathError("face point lies on another face");
                        PlaceValue tm1 = evaluate_at_place(coord_minus_one(tk), p);
                        if (tm1.is_zero()) throw MathError("face point lies on {t=1}");
                        coords.push_back(tk);
                    }
                    auto [key, factor] = make_point(coords, p);
                    int sign = (i % 2 == 0 ? 1 : -1) * face_sign(j);
                    out.add(key, sign * mult * factor);
                });
            }
        }
    }
    return out;
}

CurveReport check_admissible_curve(const ParamCurve& C) {
    C.validate();
    CurveReport rep;
    rep.classification = modulus_classify(C);
    rep.modulus_ok = rep.classification.all_nonempty();
    if (!rep.modulus_ok) {
        for (const auto& e : rep.classification.entries)
            if (e.S.empty())
                rep.problems.push_back("modulus condition fails at " + e.place.to_string() +
                                       " (r=" + std::to_string(e.r) + ")");
    }

    // Proper intersection: no parameter place satisfies two face equations.
    struct Sol {
        int i;
        FaceSide j;
        Place p;
    };
    std::vector<Sol> sols;
    for (int i = 1; i <= C.n; ++i)
        for (FaceSide j : {FaceSide::Zero, FaceSide::Inf})
            for (const auto& [p, mult] : curve_face_solutions(C, i, j)) {
                (void)mult;
                sols.push_back({i, j, p});
            }
    for (size_t a = 0; a < sols.size(); ++a) {
        for (size_t b = a + 1; b < sols.size(); ++b) {
            if (sols[a].i == sols[b].i) continue;
            if (places_overlap(sols[a].p, sols[b].p)) {
                rep.proper = false;
                rep.problems.push_back("faces t" + std::to_string(sols[a].i) + " and t" +
                                       std::to_string(sols[b].i) + " meet at " +
                                       sols[a].p.to_string());
            }
        }
    }

    // Face points must satisfy the c_0 membership conditions.
    try {
        boundary_curve(C);
    } catch (const MathError& e) {
        rep.faces_legal = false;
        rep.problems.push_back(std::string("face point violation: ") + e.what());
    } catch (const CapabilityError& e) {
        rep.faces_legal = false;
        rep.problems.push_back(std::string("face point not canonicalizable: ") + e.what());
    }

    // Divisor form of the modulus condition, via the supremum.
    Divisor x0 = effective_pullback(C.x, C);
    std::vector<Divisor> pulls;
    for (const auto& ti : C.t) pulls.push_back(effective_pullback(coord_minus_one(ti), C));
    Divisor sup = divisor_sup(pulls);
    rep.sup_effective = (sup - x0 * C.m).is_effective();
    return rep;
}

std::string CurveReport::to_string() const {
    std::ostringstream os;
    os << "proper intersection: " << (proper ? "ok" : "FAIL") << "\n";
    os << "face cycles in c0:   " << (faces_legal ? "ok" : "FAIL") << "\n";
    os << "modulus condition:   " << (modulus_ok ? "ok" : "FAIL") << "\n";
    os << "sup-form effective:  " << (sup_effective ? "ok" : "FAIL") << "\n";
    os << "classification:\n" << classification.to_string();
    for (const auto& p : problems) os << "problem: " << p << "\n";
    return os.str();
}

DegeneracyInfo degeneracy_info(const ParamCurve& C) {
    DegeneracyInfo info;
    if (C.x.involves(C.param)) return info;
    int free_slot = -1;
    for (int k = 0; k < C.n; ++k) {
        if (C.t[static_cast<size_t>(k)].involves(C.param)) {
            if (free_slot >= 0) return info;  // two moving coordinates
            free_slot = k;
        }
    }
    if (free_slot < 0) return info;
    info.pullback_shape = true;
    info.free_slot = free_slot;
    const RatFunc& f = C.t[static_cast<size_t>(free_slot)];
    info.degree = std::max(f.num().degree(C.param), f.den().degree(C.param));
    return info;
}

bool is_degenerate(const ParamCurve& C) { return degeneracy_info(C).degenerate(); }

namespace {

struct ComponentCurve {
    ParamCurve curve;
    bool empty_in_box = false;
    bool contracted = false;
    bool off_domain = false;  // x identically infinite: skip
    bool indeterminate = false;
};

// Assemble the face curve from coordinate images under a component
// substitution (or a line limit). `face_index` is the omitted coordinate.
ComponentCurve build_face_curve(const ParamSurface& S, int face_index, Symbol curve_param,
                                const std::function<SubstResult(const RatFunc&)>& image) {
    ComponentCurve out;
    SubstResult xv = image(S.x);
    if (xv.indeterminate) {
        out.indeterminate = true;
        return out;
    }
    if (xv.infinite) {
        out.off_domain = true;
        return out;
    }
    if (xv.v.is_zero()) throw MathError("face component lies inside {x = 0}");
    ParamCurve c;
    c.n = S.nt - 1;
    c.m = S.m;
    c.param = curve_param;
    c.x = xv.v;
    for (int k = 1; k <= S.nt; ++k) {
        if (k == face_index) continue;
        SubstResult tv = image(S.t[static_cast<size_t>(k - 1)]);
        if (tv.indeterminate) {
            out.indeterminate = true;
            return out;
        }
        if (tv.infinite || tv.v.is_zero())
            throw MathError("face component lies inside another face (t" + std::to_string(k) +
                            " identically " + (tv.infinite ? "infinity" : "0") + ")");
        if (tv.v.is_one()) out.empty_in_box = true;
        c.t.push_back(tv.v);
    }
    bool constant = !c.x.involves(curve_param);
    for (const auto& ti : c.t) constant = constant && !ti.involves(curve_param);
    out.contracted = constant;
    out.curve = std::move(c);
    return out;
}

// All squarefree factors of G in the two surface parameters, content included.
std::vector<std::pair<Poly, int>> all_squarefree_factors(const Poly& G, Symbol u, Symbol v) {
    std::vector<std::pair<Poly, int>> out;
    Poly rest = G;
    for (Symbol s : {u, v}) {
        if (!rest.involves(s)) continue;
        auto factors = squarefree_decompose(rest, s);
        Poly prod(G.table(), Rational(1));
        for (const auto& [f, e] : factors) {
            out.emplace_back(f, e);
            prod = prod * f.pow(static_cast<unsigned>(e));
        }
        rest = rest.divexact(prod);
    }
    return out;
}

}  // namespace

SurfaceFaces surface_faces(const ParamSurface& S, int i, FaceSide j,
                           const std::vector<UserFaceParam>* user) {
    S.validate();
    if (i < 1 || i > S.nt) throw InputError("face index out of range");
    SurfaceFaces out;
    const TablePtr& table = S.x.table();
    const RatFunc& ti = S.t[static_cast<size_t>(i - 1)];

    auto push_component = [&](const ComponentCurve& cc, int mult, const std::string& origin) {
        if (cc.off_domain) return;
        if (cc.indeterminate) {
            out.unsolved.push_back(origin + " (indeterminate coordinate along the component)");
            return;
        }
        FaceCurve fc;
        fc.curve = cc.curve;
        fc.multiplicity = mult;
        fc.empty_in_box = cc.empty_in_box;
        fc.contracted = cc.contracted;
        fc.origin = origin;
        out.curves.push_back(std::move(fc));
    };

    // Affine components: factors of the numerator (j=0) or denominator (j=inf).
    Poly G = j == FaceSide::Zero ? ti.num() : ti.den();
    for (const auto& [factor, mult] : all_squarefree_factors(G, S.pu, S.pv)) {
        std::vector<std::pair<Symbol, RatFunc>> solutions;  // (solved symbol, root)
        Poly leftover = factor;
        if (factor.involves(S.pu)) {
            auto split = extract_field_roots(FieldPoly::from_poly(factor, S.pu));
            for (const auto& r : split.roots) solutions.emplace_back(S.pu, r);
            leftover = split.remaining.deg() >= 1 ? split.remaining.to_poly_primitive()
                                                  : Poly(table, Rational(1));
        }
        if (leftover.involves(S.pv)) {
            auto split = extract_field_roots(FieldPoly::from_poly(leftover, S.pv));
            for (const auto& r : split.roots) solutions.emplace_back(S.pv, r);
            leftover = split.remaining.deg() >= 1 ? split.remaining.to_poly_primitive()
                                                  : Poly(table, Rational(1));
        }
        if (leftover.involves(S.pu) || leftover.involves(S.pv)) {
            out.unsolved.push_back(leftover.to_string());
        }
        for (const auto& [solved, root] : solutions) {
            Symbol other = solved == S.pu ? S.pv : S.pu;
            std::map<uint32_t, RatFunc> sub{{solved.idx, root}};
            auto image = [&](const RatFunc& f) { return substitute_checked(f, sub); };
            ComponentCurve cc = build_face_curve(S, i, other, image);
            push_component(cc, mult,
                           table->name(solved) + " = " + root.to_string());
        }
    }

    // Components along the two infinity lines of the parameter domain.
    for (Symbol line : {S.pu, S.pv}) {
        int ord = ti.den().degree(line) - ti.num().degree(line);
        int mult = j == FaceSide::Zero ? ord : -ord;
        if (mult <= 0) continue;
        Symbol other = line == S.pu ? S.pv : S.pu;
        auto image = [&](const RatFunc& f) {
            SubstResult r;
            auto lim = limit_at_inf(f, line);
            if (!lim) {
                // Distinguish a pole from indeterminacy is not needed along
                // the full line: a pole means the component leaves the domain.
                r.infinite = true;
                return r;
            }
            r.v = *lim;
            return r;
        };
        ComponentCurve cc = build_face_curve(S, i, other, image);
        push_component(cc, mult, table->name(line) + " = inf");
    }

    // User-supplied parametrizations for unresolved factors.
    if (user && !out.unsolved.empty()) {
        std::vector<std::string> still;
        for (const auto& desc : out.unsolved) {
            bool resolved = false;
            for (const auto& uf : *user) {
                if (uf.i != i || uf.j != j) continue;
                if (desc.rfind(uf.factor, 0) != 0) continue;
                std::map<uint32_t, RatFunc> sub{{S.pu.idx, uf.u}, {S.pv.idx, uf.v}};
                SubstResult check = substitute_checked(ti, sub);
                bool on_face = j == FaceSide::Zero ? (!check.infinite && !check.indeterminate &&
                                                      check.v.is_zero())
                                                   : check.infinite;
                if (!on_face)
                    throw InputError("user face for " + desc + " does not satisfy t" +
                                     std::to_string(i) + " = " +
                                     (j == FaceSide::Zero ? "0" : "inf"));
                auto image = [&](const RatFunc& f) { return substitute_checked(f, sub); };
                ComponentCurve cc = build_face_curve(S, i, uf.param, image);
                push_component(cc, uf.multiplicity, "user face: " + desc);
                resolved = true;
                break;
            }
            if (!resolved) still.push_back(desc);
        }
        out.unsolved = std::move(still);
    }
    return out;
}

Cycle boundary_surface(const ParamSurface& S, const std::vector<UserFaceParam>* user) {
    Cycle out;
    std::vector<std::string> unsolved;
    for (int i = 1; i <= S.nt; ++i) {
        for (FaceSide j : {FaceSide::Zero, FaceSide::Inf}) {
            SurfaceFaces faces = surface_faces(S, i, j, user);
            for (const auto& d : faces.unsolved)
                unsolved.push_back("face t" + std::to_string(i) +
                                   (j == FaceSide::Zero ? "=0" : "=inf") + ": " + d);
            for (const auto& fc : faces.curves) {
                if (fc.empty_in_box || fc.contracted) continue;
                Cycle::Term term;
                term.coeff = (i % 2 == 0 ? 1 : -1) * face_sign(j) * fc.multiplicity;
                term.curve = fc.curve;
                term.label = "d" + std::to_string(i) + (j == FaceSide::Zero ? "^0" : "^inf") +
                             " [" + fc.origin + "]";
                out.terms.push_back(std::move(term));
            }
        }
    }
    if (!unsolved.empty()) {
        std::string msg = "faces need user-supplied parametrizations:";
        for (const auto& d : unsolved) msg += "\n  " + d;
        throw CapabilityError(msg);
    }
    return out;
}

ZeroCycle boundary_squared(const ParamSurface& S, const std::vector<UserFaceParam>* user) {
    ZeroCycle out;
    for (const auto& term : boundary_surface(S, user).terms)
        out = out + boundary_curve(term.curve) * term.coeff;
    return out;
}

namespace {

// Order of vanishing of g along the affine component {q = 0}: the number of
// times q divides the numerator minus the denominator, over the fraction
// field in the other variables.
int ord_along_component(const RatFunc& g, const Poly& q, Symbol main) {
    auto mult_of = [&](const Poly& P) {
        FieldPoly fp = FieldPoly::from_poly(P, main);
        FieldPoly fq = FieldPoly::from_poly(q, main);
        int e = 0;
        while (true) {
            auto [quo, rem] = fp.divrem(fq);
            if (!rem.is_zero()) break;
            fp = quo;
            ++e;
        }
        return e;
    };
    return mult_of(g.num()) - mult_of(g.den());
}

}  // namespace

SurfaceReport check_admissible_surface(const ParamSurface& S) {
    S.validate();
    SurfaceReport rep;
    const TablePtr& table = S.x.table();

    struct Component {
        bool line = false;
        Symbol line_sym{};
        Poly q;
        Symbol main{};
        int r = 1;
        std::string desc;
    };
    std::vector<Component> comps;
    for (const auto& [q, r] : all_squarefree_factors(S.x.num(), S.pu, S.pv)) {
        Component c;
        c.q = q;
        c.main = q.involves(S.pu) ? S.pu : S.pv;
        c.r = r;
        c.desc = q.to_string() + " = 0";
        comps.push_back(std::move(c));
    }
    for (Symbol line : {S.pu, S.pv}) {
        int ord = S.x.den().degree(line) - S.x.num().degree(line);
        if (ord > 0) {
            Component c;
            c.line = true;
            c.line_sym = line;
            c.r = ord;
            c.desc = table->name(line) + " = inf";
            comps.push_back(std::move(c));
        }
    }

    for (const auto& c : comps) {
        SurfaceComponentVerdict v;
        v.component = c.desc;
        v.r = c.r;
        for (int i = 1; i <= S.nt; ++i) {
            RatFunc g = coord_minus_one(S.t[static_cast<size_t>(i - 1)]);
            int ord = c.line ? g.den().degree(c.line_sym) - g.num().degree(c.line_sym)
                             : ord_along_component(g, c.q, c.main);
            if (ord >= S.m * c.r) v.S.insert(i);
        }
        if (v.S.empty()) {
            rep.modulus_ok = false;
            rep.problems.push_back("no index satisfies the modulus condition along " + c.desc);
        }
        rep.components.push_back(std::move(v));
    }

    // Indeterminacy of the coordinate map on {x = 0}: base points there are
    // invisible on the parameter domain, so only warn.
    for (const auto& c : comps) {
        if (c.line) continue;
        for (int i = 0; i <= S.nt; ++i) {
            const RatFunc& f = i == 0 ? S.x : S.t[static_cast<size_t>(i - 1)];
            Poly gn = Poly::gcd(f.num(), c.q);
            Poly gd = Poly::gcd(f.den(), c.q);
            if (!gn.is_constant() && !gd.is_constant()) {
                rep.warnings.push_back(
                    "possible indeterminacy of " +
                    (i == 0 ? std::string("x") : "t" + std::to_string(i)) + " on " + c.desc +
                    "; supply a blown-up parametrization if the face data looks wrong");
            }
        }
    }
    return rep;
}

std::string SurfaceReport::to_string() const {
    std::ostringstream os;
    os << "surface modulus: " << (modulus_ok ? "ok" : "FAIL") << "\n";
    for (const auto& c : components) {
        os << "  component " << c.component << ": r=" << c.r << " S={";
        bool first = true;
        for (int i : c.S) {
            if (!first) os << ",";
            first = false;
            os << i;
        }
        os << "}\n";
    }
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    for (const auto& p : problems) os << "problem: " << p << "\n";
    return os.str();
}

}  // namespace achow
