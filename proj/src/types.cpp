#include "helix/types.hpp"

namespace helix {

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::quadrature:
      return "quadrature";
    case Method::residue_series:
      return "residue_series";
    case Method::approx_series:
      return "approx_series";
  }
  return "unknown";
}

}  // namespace helix
