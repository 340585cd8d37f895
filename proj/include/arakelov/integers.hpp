#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "arakelov/common.hpp"
#include "arakelov/numberfield.hpp"

namespace arakelov {

/// x + y * omega in O_K (y = 0 over Q).
struct OkElement {
    BigInt x = 0;
    BigInt y = 0;

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const OkElement&) const = default;
};

/// Arithmetic in the ring of integers O_K, which is a principal ideal domain
/// for every supported field.
class IntegerRing {
public:
    explicit IntegerRing(NumberField field) : field_(std::move(field)) {}

    const NumberField& field() const { return field_; }

    OkElement add(const OkElement& a, const OkElement& b) const { return {a.x + b.x, a.y + b.y}; }
    OkElement sub(const OkElement& a, const OkElement& b) const { return {a.x - b.x, a.y - b.y}; }
    OkElement neg(const OkElement& a) const { return {-a.x, -a.y}; }
    OkElement mul(const OkElement& a, const OkElement& b) const;
    OkElement conj(const OkElement& a) const;
    BigInt norm(const OkElement& a) const;
    /// a / b when it lies in O_K.
    std::optional<OkElement> divide(const OkElement& a, const OkElement& b) const;

    std::complex<double> embed(const OkElement& a, const Place& place) const;
    FieldElement to_field(const OkElement& a) const;

    struct Bezout {
        OkElement g, u, v;  // u a + v b = g and (a, b) = (g)
    };
    Bezout bezout(const OkElement& a, const OkElement& b) const;

    /// A generator of the ideal whose Z-basis (in {1, omega} coordinates) is given.
    OkElement ideal_generator(const std::vector<OkElement>& z_basis) const;

    /// Element of O_K congruent to r modulo the ideal with the given Z-basis and
    /// of small size.
    OkElement reduce_modulo(const OkElement& r, const std::vector<OkElement>& ideal_z_basis) const;

private:
    NumberField field_;
};

/// Turns Z-coordinates of O_K^n into O_K entries and back.
std::vector<OkElement> to_ok_vector(const NumberField& field, const ModuleVector& v);
ModuleVector to_module_vector(const NumberField& field, const std::vector<OkElement>& v);

/// O_K-basis of the O_K-module generated by `rows` (a PID echelon form).
std::vector<std::vector<OkElement>> ok_echelon_basis(const IntegerRing& ring,
                                                     std::vector<std::vector<OkElement>> rows);

}  // namespace arakelov
