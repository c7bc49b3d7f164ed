// Named scalar functionals tracked by the error reports: the ratio x/p,
// the doubled energy 2H, and H itself.  Each carries analytic gradients
// and, for ratios, the denominator used for singular-band exclusion.
#pragma once

#include <string>
#include <vector>

#include "hamflow/hamiltonian.hpp"
#include "hamflow/lie_engine.hpp"

namespace hamflow {

struct Functional {
    ScalarField field;
    std::function<double(const PhaseState&)> denominator;  // optional
    std::string reciprocal_hint;
};

Functional functional_x_over_p();
Functional functional_two_h(const HamiltonianSystem& sys);
Functional functional_h(const HamiltonianSystem& sys);

// Resolves "x/p", "2H" or "H"; throws a domain error otherwise.
Functional functional_by_name(const std::string& name, const HamiltonianSystem& sys);

}  // namespace hamflow
