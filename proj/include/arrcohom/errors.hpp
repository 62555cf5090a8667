#pragma once

#include <stdexcept>
#include <string>

namespace arrcohom {

// Error taxonomy. InputError covers malformed or out-of-contract user input
// (CLI exit code 2); InternalError covers invariant violations that indicate
// a bug in this library, never a property of the input (CLI exit code 3).

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

class ZeroNormal : public InputError {
public:
    explicit ZeroNormal(const std::string& msg) : InputError(msg) {}
};

class DimensionMismatch : public InputError {
public:
    explicit DimensionMismatch(const std::string& msg) : InputError(msg) {}
};

class NotDivisible : public InputError {
public:
    explicit NotDivisible(const std::string& msg) : InputError(msg) {}
};

class GenericityFailure : public InputError {
public:
    explicit GenericityFailure(const std::string& msg) : InputError(msg) {}
};

class MultiplicityTooHigh : public InputError {
public:
    explicit MultiplicityTooHigh(const std::string& msg) : InputError(msg) {}
};

class RankMismatch : public InputError {
public:
    explicit RankMismatch(const std::string& msg) : InputError(msg) {}
};

class DegenerateSample : public InputError {
public:
    explicit DegenerateSample(const std::string& msg) : InputError(msg) {}
};

// A certified witness contradicts a theorem whose hypotheses were checked:
// by construction this is an implementation defect.
class BoundViolation : public InternalError {
public:
    explicit BoundViolation(const std::string& msg) : InternalError(msg) {}
};

class ViolationFound : public InternalError {
public:
    explicit ViolationFound(const std::string& msg) : InternalError(msg) {}
};

}  // namespace arrcohom
