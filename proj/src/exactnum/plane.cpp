#include "cat0/plane.hpp"

namespace cat0 {

QField cos_units(int k) {
  k = ((k % 24) + 24) % 24;
  const Rational h(1, 2), q(1, 4);
  switch (k) {
    case 0: return QField(1);
    case 1: return QField(0, q, 0, q);
    case 5: return QField(0, -q, 0, q);
    case 7: return QField(0, q, 0, -q);
    case 11: return QField(0, -q, 0, -q);
    case 2: return QField(0, 0, h, 0);
    case 3: return QField(0, h, 0, 0);
    case 4: return QField(h);
    case 6: return QField(0);
    case 8: return QField(-h);
    case 9: return QField(0, -h, 0, 0);
    case 10: return QField(0, 0, -h, 0);
    case 12: return QField(-1);
    default:
      return cos_units(24 - k);
  }
}

QField sin_units(int k) { return cos_units(6 - k); }

}  // namespace cat0
