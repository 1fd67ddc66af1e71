#pragma once

#include <stdexcept>
#include <string>

namespace dirac_step {

/// Energy below the rest mass, non-finite, or at a point where a quantity is singular.
class invalid_energy : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// p == 0: the matching parameter is undefined at grazing incidence.
class degenerate_incidence : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation called with a zone it is not defined for.
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class empty_zone_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A packet whose momentum support straddles a zone boundary.
class mixed_zone_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-difference stencil that crosses a zone boundary.
class stencil_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Doubling the momentum node count moved r(t) by more than the tolerance.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double delta)
        : std::runtime_error(what), delta_(delta) {}
    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

} // namespace dirac_step
