#pragma once

// Points of the plane with coordinates in QField.

#include "cat0/exactnum.hpp"

namespace cat0 {

struct Vec2 {
  QField x, y;

  friend Vec2 operator+(const Vec2& p, const Vec2& q) { return {p.x + q.x, p.y + q.y}; }
  friend Vec2 operator-(const Vec2& p, const Vec2& q) { return {p.x - q.x, p.y - q.y}; }
  friend Vec2 operator*(const QField& s, const Vec2& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Vec2& p, const Vec2& q) { return p.x == q.x && p.y == q.y; }
};

inline QField dot(const Vec2& p, const Vec2& q) { return p.x * q.x + p.y * q.y; }
inline QField cross(const Vec2& p, const Vec2& q) { return p.x * q.y - p.y * q.x; }
inline QField norm2(const Vec2& p) { return dot(p, p); }
// Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return cross(b - a, c - a).sign(); }

// Mirror image of p in the line through a and b.
inline Vec2 reflect(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 d = b - a;
  QField t = dot(p - a, d) / norm2(d);
  Vec2 foot = a + t * d;
  return foot + foot - p;
}

struct Vec2Less {
  bool operator()(const Vec2& p, const Vec2& q) const {
    if (!(p.x == q.x)) return structural_less(p.x, q.x);
    return structural_less(p.y, q.y);
  }
};

// cos and sin of k*pi/12 for any integer k.
QField cos_units(int k);
QField sin_units(int k);

}  // namespace cat0
