// String ids for systems and schemes, shared by the CLI and the tests.
#pragma once

#include <string>
#include <vector>

#include "hamflow/hamiltonian.hpp"
#include "hamflow/schemes.hpp"

namespace hamflow::cli {

// "ho" (alias "harmonic-oscillator"), "pendulum", "quartic".
HamiltonianSystem system_by_id(const std::string& id);

// Base ids: exact | euler | rk4 | generic-rk4 | dg (alias
// discrete-gradient) | dg-reparam | lie2 | lie3 | lie4.  A base id may be
// suffixed with corrections recovered from the flow-difference route, e.g.
// "euler+v2v3v4".
Scheme scheme_by_id(const std::string& id, const HamiltonianSystem& sys);

std::vector<std::string> known_system_ids();
std::vector<std::string> known_scheme_ids();

}  // namespace hamflow::cli
