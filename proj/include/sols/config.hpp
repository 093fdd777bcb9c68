#pragma once

#include <cstdint>
#include <string>

namespace sols {

/// Run-wide numeric policy.  All tolerances are relative unless a comment
/// says otherwise; routines scale them by the natural size of the object
/// they test.
struct Config {
  /// Rank / nullspace cutoff: singular values below tolRank * sigma_max
  /// count as zero.
  double tolRank = 1e-9;
  /// Residual cutoff for algebraic identities (soliton decomposition,
  /// derivation checks, blockwise agreement).
  double tolResidual = 1e-9;
  /// Convergence threshold for the gradient flow on the sphere.
  double tolFlow = 1e-8;
  /// Seed for all randomized searches and generators.
  std::uint64_t seed = 1;
  /// Prefer exact rational arithmetic where an exact path exists.
  bool exactArithmetic = false;
  /// CLI output format: "json", "md" or "csv".
  std::string outputFormat = "json";
};

}  // namespace sols
