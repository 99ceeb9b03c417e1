#ifndef RCM_ERRORS_HPP
#define RCM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcm {

// Two points/vectors from different model spaces were mixed.
struct SpaceMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// log() requested at (or numerically too close to) the antipode on a sphere,
// or exp() asked to travel past the injectivity radius.
struct InjectivityError : std::domain_error {
    using std::domain_error::domain_error;
};

// No Euclidean simplex realizes the requested edge lengths (Gram matrix not
// positive definite within tolerance).
struct NotRealizableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A solver was invoked on an instance whose certificate does not hold and the
// caller did not force execution.
struct CertificateFailedError : std::runtime_error {
    explicit CertificateFailedError(const std::string& what, std::string component = {})
        : std::runtime_error(what), failing_component(std::move(component)) {}
    std::string failing_component;
};

// The damped iteration exhausted its iteration budget.
struct MaxIterationsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The barycentric stationarity system is rank deficient at the query point.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rcm

#endif
