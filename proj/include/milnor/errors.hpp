#pragma once

#include <stdexcept>
#include <string>

namespace milnor {

// Base class for all library errors. Subclasses distinguish invalid input
// (CLI exit 2) from certification / consistency failures (CLI exit 3).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- input errors -----------------------------------------------------------

class InputError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public InputError {
public:
    SyntaxError(const std::string& msg, std::size_t pos)
        : InputError(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

class NotHomogeneous : public InputError {
public:
    NotHomogeneous(int deg_a, int deg_b)
        : InputError("polynomial is not homogeneous: found terms of degree " + std::to_string(deg_a) +
                     " and " + std::to_string(deg_b)),
          degree_a(deg_a),
          degree_b(deg_b) {}
    int degree_a;
    int degree_b;
};

class UnknownVariable : public InputError {
public:
    explicit UnknownVariable(const std::string& name)
        : InputError("unknown variable '" + name + "'"), variable(name) {}
    std::string variable;
};

class ContextMismatch : public InputError {
public:
    using InputError::InputError;
};

class WrongArity : public InputError {
public:
    using InputError::InputError;
};

class ZeroPoint : public InputError {
public:
    using InputError::InputError;
};

class BadPrime : public InputError {
public:
    using InputError::InputError;
};

class FactorProductMismatch : public InputError {
public:
    using InputError::InputError;
};

class UnsupportedDimension : public InputError {
public:
    using InputError::InputError;
};

// --- diagnostics: certification failures and violated identities ------------

class Diagnostic : public Error {
public:
    using Error::Error;
};

// Modular ranks disagreed and exact fallback was disabled.
class Uncertified : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

// Graded dimensions did not become constant inside the guaranteed window;
// the input most likely has non-isolated singularities.
class NotStabilized : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

// The two independent routes to the same cohomology dimension disagree.
class InconsistentEuler : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

class WedgeNotZero : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

class MismatchedTheorem : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

class DegeneracyViolation : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

class NotDegenerate : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

class NodalHypothesisViolated : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

class WellDefinednessFailure : public Diagnostic {
public:
    using Diagnostic::Diagnostic;
};

}  // namespace milnor
