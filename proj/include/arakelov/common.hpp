#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arakelov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer coordinates of a module element in the Z-basis b_k * e_i of O_K^n,
/// stored at index i * d + k (d = field degree, b_0 = 1, b_1 = omega).
using ModuleVector = std::vector<long long>;

inline constexpr std::uint64_t kDefaultNodeCap = 100'000'000;

/// Default tolerance for comparisons of archimedean (floating point) values.
inline constexpr double kDefaultTolerance = 1e-9;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidDescriptor : public Error {
public:
    using Error::Error;
};

class ZeroElement : public Error {
public:
    ZeroElement() : Error("divisor of the zero element is undefined") {}
};

class InvalidMetric : public Error {
public:
    using Error::Error;
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("bundles are defined over different fields") {}
};

class DependentGenerators : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

/// An enumeration exceeded its node budget, so the answer is unknown.
class Indeterminate : public Error {
public:
    explicit Indeterminate(std::uint64_t nodes)
        : Error("enumeration node cap exceeded after " + std::to_string(nodes) + " nodes"),
          nodes_(nodes) {}
    Indeterminate(std::uint64_t nodes, const std::string& what) : Error(what), nodes_(nodes) {}
    std::uint64_t nodes() const { return nodes_; }

private:
    std::uint64_t nodes_;
};

class DivergenceSuspected : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parses "p/q", an integer, or a decimal literal (optionally with exponent)
/// into an exact rational. Throws InvalidArgument on malformed input.
Rational parse_rational(const std::string& token);

double to_double(const Rational& q);

}  // namespace arakelov
