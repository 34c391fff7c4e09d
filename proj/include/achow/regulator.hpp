#pragma once

#include <map>
#include <string>
#include <vector>

#include "achow/cycles.hpp"
#include "achow/diff_form.hpp"

namespace achow {

// Element of Omega^{n-2}_{k/Z}: coefficients on sorted wedges of the
// parameter differentials da_j; a bare field element when n = 2.
class RegulatorValue {
public:
    RegulatorValue() = default;
    RegulatorValue(TablePtr table, int n) : table_(std::move(table)), n_(n) {}

    int n() const { return n_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<std::vector<uint32_t>, RatFunc>& components() const { return comps_; }
    // The coefficient for n = 2 (empty wedge).
    RatFunc scalar() const;

    void add(const std::vector<uint32_t>& wedge, const RatFunc& c);
    RegulatorValue operator+(const RegulatorValue& o) const;
    RegulatorValue operator-(const RegulatorValue& o) const;
    RegulatorValue operator*(const Rational& c) const;

    bool operator==(const RegulatorValue& o) const { return comps_ == o.comps_; }
    bool operator!=(const RegulatorValue& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    TablePtr table_;
    int n_ = 2;
    std::map<std::vector<uint32_t>, RatFunc> comps_;  // sorted param symbol indices
};

// Pull the ambient form back along the curve: substitute the coordinates and
// expand every differential as (d/dt) dt + sum_j (d/da_j) da_j on the basis
// {dt, da_1, ..., da_r}.
DiffForm pullback_to_curve(const DiffForm& f, const ParamCurve& C);

// (-1)^{l-1} res_p of the pullback of omega_l, l the smallest valid index of
// the modulus classification at p.
RegulatorValue regulator_point(const ParamCurve& C, const Place& p);
RegulatorValue regulator_point_with_index(const ParamCurve& C, const Place& p, int l);

RegulatorValue regulator_curve(const ParamCurve& C);
RegulatorValue regulator_cycle(const Cycle& Z);

struct WellDefReport {
    Place place;
    std::set<int> S;
    std::vector<std::pair<int, RegulatorValue>> candidates;
    bool all_equal = true;
    bool mixed_all_zero = true;  // meaningful when |S| > 1
    bool ok() const { return all_equal && (S.size() < 2 || mixed_all_zero); }
    std::string to_string() const;
};

WellDefReport verify_well_definedness(const ParamCurve& C, const Place& p);

// R_{2,m} of the boundary of the surface; zero for every admissible surface.
RegulatorValue verify_boundary_vanishing(const ParamSurface& S,
                                         const std::vector<UserFaceParam>* user = nullptr);

}  // namespace achow
