#pragma once

#include "rackq/coset.hpp"
#include "rackq/rack.hpp"
#include "rackq/rational.hpp"

#include <vector>

namespace rackq {

// Components: orbits of the moves z ↦ ψ_w^{±1}(z), w ranging over all elements.
struct ComponentDecomposition {
    int count = 0;
    std::vector<int> component_of;    // element -> component id
    std::vector<int> representatives; // component id -> smallest member
    std::vector<std::vector<int>> members;
};
ComponentDecomposition components(const FiniteRack& r);

// graph metric: d(x,y) = least number of moves ψ_w^{±1} taking x to y;
// -1 marks elements in other components
std::vector<int> distances_from(const FiniteRack& r, int x);
int rack_distance(const FiniteRack& r, int x, int y);  // throws DifferentComponents

struct DistanceTable {
    ComponentDecomposition comps;
    // per component: members in ascending order and the matching distance matrix
    std::vector<std::vector<std::vector<int>>> matrix;
    std::vector<int> diameters;
};
DistanceTable distance_table(const FiniteRack& r);

bool is_automorphism(const FiniteRack& r, const Perm& alpha);

// verifies alpha is an automorphism (NotAnAutomorphism otherwise), then that it
// preserves all within-component distances; returns true (it is a theorem, the
// return value records the exhaustive check)
bool check_isometry(const FiniteRack& r, const Perm& alpha);

// Rack metric vs quotient word metric on a coset rack, compared per component
// (distances inside each orbit of the conjugation closure of S).
struct MetricQuotientCheck {
    bool equal = false;
    CosetRack rack;
    // per component: members (rack elements, ascending), both matrices
    std::vector<std::vector<int>> members;
    std::vector<std::vector<std::vector<int>>> rack_matrix;
    std::vector<std::vector<std::vector<int>>> quotient_matrix;
};
MetricQuotientCheck check_metric_quotient_equality(const CosetRackSpec& spec,
                                                   size_t cap = kDefaultGroupCap);

// the canonical quandle quotient projection never increases distances;
// max_slack = max over same-component pairs of d(x,y) - d([x],[y])
struct LipschitzCheck {
    bool ok = false;
    int max_slack = 0;
};
LipschitzCheck check_extension_lipschitz(const FiniteRack& r);

// For f = distance to the component basepoint, the defect
//   max |f(x) - f(ψ_y(x))| over all x, y.
// Empty basepoints = component representatives. At most 1 by the triangle
// inequality; returned exactly.
Rat delta_f_defect(const FiniteRack& r, std::vector<int> basepoints = {});

} // namespace rackq
