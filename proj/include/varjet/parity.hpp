#pragma once

namespace varjet {

/// Z_2 grading of generators and expressions.
struct Parity {
    int value = 0;  // 0 or 1

    constexpr Parity() = default;
    constexpr explicit Parity(int v) : value(v & 1) {}

    constexpr bool odd() const { return value != 0; }
    constexpr bool even() const { return value == 0; }

    friend constexpr Parity operator+(Parity a, Parity b) { return Parity(a.value ^ b.value); }
    friend constexpr Parity operator*(Parity a, Parity b) { return Parity(a.value & b.value); }
    friend constexpr bool operator==(Parity a, Parity b) { return a.value == b.value; }
    friend constexpr bool operator!=(Parity a, Parity b) { return a.value != b.value; }
};

inline constexpr Parity kEven{0};
inline constexpr Parity kOdd{1};

/// Koszul sign (-1)^{ab} as an integer factor.
constexpr int koszul_sign(Parity a, Parity b) { return (a.value & b.value) ? -1 : 1; }

}  // namespace varjet
