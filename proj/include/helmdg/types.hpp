#pragma once

#include <cmath>
#include <complex>

namespace helmdg {

using Complex = std::complex<double>;

inline constexpr Complex kImaginary{0.0, 1.0};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return s * a; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Complex-valued 2-vector (e.g. the gradient of a complex scalar field).
struct CVec2 {
  Complex x{};
  Complex y{};
};

inline CVec2 operator+(const CVec2& a, const CVec2& b) { return {a.x + b.x, a.y + b.y}; }
inline CVec2 operator-(const CVec2& a, const CVec2& b) { return {a.x - b.x, a.y - b.y}; }
inline CVec2 operator*(Complex s, const CVec2& a) { return {s * a.x, s * a.y}; }
inline CVec2 operator*(Complex s, Vec2 a) { return {s * a.x, s * a.y}; }

inline Complex dot(const CVec2& a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double abs2(Complex z) { return std::norm(z); }
inline double abs2(const CVec2& a) { return std::norm(a.x) + std::norm(a.y); }

}  // namespace helmdg
