#pragma once

// Brute-force value-window oracle for n = 1, independent of the engine's
// echelon path. Elements are exponent->coefficient maps over Q; the closure
// repeatedly cancels colliding leading exponents, so the attainable leading
// exponents of all K-linear combinations are exactly the basis keys.

#include <map>
#include <set>
#include <vector>

#include "puiseux/rational.hpp"

namespace oracle {

using puiseux::Rat;

using Elem = std::map<Rat, Rat>;  // exponent -> coefficient, ascending

inline void drop_zeros(Elem& e) {
  for (auto it = e.begin(); it != e.end();)
    it = it->second == 0 ? e.erase(it) : std::next(it);
}

inline Elem mul_mono(const Elem& e, const Rat& shift, const Rat& scale) {
  Elem out;
  for (const auto& [exp, c] : e) out.emplace(exp + shift, c * scale);
  return out;
}

inline Elem mul(const Elem& a, const Elem& b) {
  Elem out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  drop_zeros(out);
  return out;
}

// Leading exponents attainable from linear combinations of the generators,
// restricted to the window [0, bound].
inline std::set<Rat> leading_exponents(std::vector<Elem> gens, const Rat& bound) {
  std::map<Rat, Elem> basis;  // leading exponent -> reduced element
  for (Elem e : gens) {
    drop_zeros(e);
    while (!e.empty()) {
      Rat lead = e.begin()->first;
      auto hit = basis.find(lead);
      if (hit == basis.end()) {
        Rat inv = Rat(1) / e.begin()->second;
        for (auto& [exp, c] : e) c *= inv;
        basis.emplace(lead, std::move(e));
        break;
      }
      Rat factor = e.begin()->second;
      for (const auto& [exp, c] : hit->second) e[exp] -= factor * c;
      drop_zeros(e);
    }
  }
  std::set<Rat> out;
  for (const auto& [lead, elem] : basis)
    if (lead >= 0 && lead <= bound) out.insert(lead);
  return out;
}

// Window of { ord h(xi) : h in K[[x]][y] } for an exactly-known root xi of a
// degree-d monic polynomial, enumerating generators x^a xi^b, b < d.
inline std::set<Rat> window(const Elem& xi, int deg, const Rat& bound) {
  std::vector<Elem> gens;
  std::vector<Elem> powers{Elem{{Rat(0), Rat(1)}}};
  for (int b = 1; b < deg; ++b) powers.push_back(mul(powers.back(), xi));
  for (long a = 0; Rat(a) <= bound; ++a)
    for (const Elem& p : powers) gens.push_back(mul_mono(p, Rat(a), Rat(1)));
  return leading_exponents(std::move(gens), bound);
}

}  // namespace oracle
