#pragma once

#include <stdexcept>
#include <string>

namespace selgraph {

/// Bad configuration: illegal parameter range, malformed config file,
/// incompatible model/rule pairing. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant of the simulation state was violated
/// (duplicate endpoint, histogram underflow, ...). CLI maps this to exit
/// code 3; the offending replica is aborted.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// Not enough data for an estimator (empty fit window, too few checkpoints).
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

/// The cumulative dominance sequence k_d failed the positivity requirement,
/// so the limit recursions are not applicable. Carries the offending degree.
class Condition6Error : public ConfigError {
public:
    Condition6Error(int degree, const std::string& what)
        : ConfigError(what), degree_(degree) {}
    int degree() const noexcept { return degree_; }

private:
    int degree_;
};

} // namespace selgraph
