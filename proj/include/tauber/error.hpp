#pragma once

#include <stdexcept>
#include <string>

namespace tauber {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Integer representation of a semigroup element would overflow.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Access beyond the enumeration bound where values are known exactly.
class HorizonError : public Error {
public:
    using Error::Error;
};

/// Enumeration exceeded the configured element cap.
class CapError : public Error {
public:
    using Error::Error;
};

/// A stated precondition of an experiment did not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Neumann series requested for an element whose weighted norm is >= 1.
class NeumannInapplicable : public Error {
public:
    explicit NeumannInapplicable(double norm)
        : Error("Neumann series inapplicable: weighted norm " + std::to_string(norm) + " >= 1"),
          norm_(norm) {}

    double norm() const noexcept { return norm_; }

private:
    double norm_;
};

} // namespace tauber
