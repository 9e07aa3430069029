#pragma once

#include <stdexcept>

namespace beamcoh {

// Error categories map onto CLI exit codes:
//   input_error -> 2, domain_error -> 3, solver_error -> 4.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input: bad flag values, unparseable files, unknown keys.
struct input_error : error {
    using error::error;
};

// Physically invalid request on otherwise well-formed input.
struct domain_error : error {
    using error::error;
};

// Numerical machinery failed to converge or was misapplied.
struct solver_error : error {
    using error::error;
};

struct unknown_species_error : input_error {
    using input_error::input_error;
};
struct parse_error : input_error {
    using input_error::input_error;
};

struct no_sign_change_error : solver_error {
    using solver_error::solver_error;
};
struct non_finite_error : solver_error {
    using solver_error::solver_error;
};
struct iteration_limit_error : solver_error {
    using solver_error::solver_error;
};
struct expansion_limit_error : solver_error {
    using solver_error::solver_error;
};

struct degenerate_pair_error : domain_error {
    using domain_error::domain_error;
};
struct turning_point_error : domain_error {
    using domain_error::domain_error;
};
struct outside_condensate_error : domain_error {
    using domain_error::domain_error;
};
struct negative_extraction_error : domain_error {
    using domain_error::domain_error;
};

} // namespace beamcoh
