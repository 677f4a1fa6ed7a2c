#pragma once

#include <stdexcept>
#include <string>

namespace kljnlab {

/// Inputs whose shapes do not line up (length mismatch, empty trace, ...).
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A party observed a loop level that contradicts its own resistor choice.
/// The bit exchange has to be discarded.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Key too short for the requested number of privacy-amplification rounds.
class AmplifyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Energy per final bit requested with a secure fraction of zero.
class NoSecureBitsError : public std::domain_error {
public:
    NoSecureBitsError() : std::domain_error("secure_fraction is 0: no secure bits can be produced") {}
};

}  // namespace kljnlab
