#pragma once

// Finite atomic measures and a candidate-cube lower bound for the measure of
// the superlevel set {M_mu chi_E > alpha}.

#include <optional>
#include <vector>

#include "tauberian/geometry.hpp"

namespace tlab {

struct Atom {
  std::vector<Rat> point;
  Rat mass;
};

class AtomicMeasure {
 public:
  // Throws invalid-argument on repeated points, nonpositive masses or mixed
  // dimensions.
  explicit AtomicMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t dim() const { return atoms_.empty() ? 0 : atoms_.front().point.size(); }
  Rat mass(const std::vector<std::size_t>& subset) const;

 private:
  std::vector<Atom> atoms_;
};

struct AtomicHalo {
  Rat halo_mass_lower;                  // mu of the atoms found in the superlevel set
  std::vector<std::size_t> halo_atoms;  // sorted atom indices, E included
  // Per atom outside E that was reached: index of the candidate cube witnessing it.
  std::vector<std::pair<std::size_t, std::size_t>> witnesses;
  std::size_t candidates_tested = 0;
};

// For every (E-atom, atom) pair: cubes of side equal to the sup-norm distance
// that contain both points, one per choice of aligned face on each axis.
BoxFamily default_pair_candidates(const AtomicMeasure& mu, const std::vector<std::size_t>& e);

// Atoms of E always belong to the superlevel set (small cubes around them
// have ratio 1). Further atoms are added when a candidate cube B containing
// them has mu(B n E) > alpha mu(B).
AtomicHalo atomic_maximal_lower(const AtomicMeasure& mu, const std::vector<std::size_t>& e, const Rat& alpha,
                                const std::optional<BoxFamily>& candidates = std::nullopt);

}  // namespace tlab
