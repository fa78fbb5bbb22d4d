#pragma once

#include <cstddef>

namespace mixdom {

/// Regular sampling grid on the growing domain [0, n^delta]: n sites
/// s_i = i * spacing with spacing = n^-(1-delta), i = 1..n. delta = 0 is the
/// fixed-domain (infill) regime; delta > 0 grows the domain while the spacing
/// still shrinks.
struct MixedDomainGrid {
  std::size_t n;
  double delta;

  double spacing() const;
  /// Site s_i for i in 1..n (one-based, s_1 = spacing()).
  double site(std::size_t i) const { return static_cast<double>(i) * spacing(); }
  /// Right end of the domain, site(n) = n^delta up to round-off.
  double domain_length() const { return site(n); }
};

/// Validates n >= 1 and delta in [0, 1) and returns the grid.
MixedDomainGrid make_grid(std::size_t n, double delta);

}  // namespace mixdom
