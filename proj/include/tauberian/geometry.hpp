#pragma once

// Exact geometry of axis-parallel cubes with rational centers and sidelengths.
//
// Everything here is closed over Rat: measures of unions, differences and
// dilations are computed by coordinate compression over all face coordinates
// involved, so identities between sets can be checked with zero tolerance.
// Boxes are closed; measures do not see boundaries, membership does.

#include <cstddef>
#include <span>
#include <vector>

#include "tauberian/rational.hpp"

namespace tlab {

inline constexpr std::size_t kMaxGeometryDim = 3;

// A cube Q in R^n: center x_Q and sidelength r_Q.
class Box {
 public:
  Box(std::vector<Rat> center, Rat side);

  // Cube [lo, lo + side]^n given by its lower corner.
  static Box from_corner(std::vector<Rat> lower, Rat side);

  std::size_t dim() const { return center_.size(); }
  const std::vector<Rat>& center() const { return center_; }
  const Rat& side() const { return side_; }
  Rat lo(std::size_t axis) const;
  Rat hi(std::size_t axis) const;
  Rat volume() const;

  bool contains(std::span<const Rat> point) const;
  bool contains(const Box& other) const;
  bool intersects(const Box& other) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Rat> center_;
  Rat side_;
};

// Concentric dilation cQ.
Box dilate(const Box& b, const Rat& factor);

// Image of b under x -> origin + factor (x - origin).
Box dilate_about(const Box& b, std::span<const Rat> origin, const Rat& factor);

enum class Ordering { decreasing_sidelength, unordered };

struct BoxFamily {
  std::vector<Box> boxes;
  Ordering ordering = Ordering::unordered;

  BoxFamily() = default;
  // Throws ordering-violation if the tag claims an order the boxes do not have,
  // invalid-argument on mixed dimensions.
  BoxFamily(std::vector<Box> boxes, Ordering ordering);

  // Stable sort by nonincreasing sidelength; ties keep input order.
  static BoxFamily sorted_decreasing(std::vector<Box> boxes);
  // Permutation applied by sorted_decreasing.
  static std::vector<std::size_t> decreasing_order(std::span<const Box> boxes);

  std::size_t size() const { return boxes.size(); }
  bool empty() const { return boxes.empty(); }
  std::size_t dim() const { return boxes.empty() ? 0 : boxes.front().dim(); }
  bool is_nonincreasing() const;
};

// Finite union of pieces, each piece being a box minus finitely many boxes.
// That is enough to carry unions of cubes, the increments
// E_j = Q_j \ (Q_0 u ... u Q_{j-1}) and their dilates.
class BoxRegion {
 public:
  struct Piece {
    Box base;
    std::vector<Box> holes;
  };

  explicit BoxRegion(std::size_t dim) : dim_(dim) {}
  static BoxRegion from_box(const Box& b);
  static BoxRegion from_boxes(std::span<const Box> boxes, std::size_t dim);

  // Adds base \ (union of holes). Holes that only touch the base are dropped,
  // and the piece disappears when a hole swallows the base.
  void add_piece(const Box& base, std::vector<Box> holes);
  void unite(const BoxRegion& other);

  std::size_t dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool has_pieces() const { return !pieces_.empty(); }

  Rat measure() const;
  bool contains(std::span<const Rat> point) const;
  BoxRegion dilated_about(std::span<const Rat> origin, const Rat& factor) const;

 private:
  std::size_t dim_;
  std::vector<Piece> pieces_;
};

Rat intersection_measure(const BoxRegion& a, const BoxRegion& b);
// |a \ b|
Rat difference_measure(const BoxRegion& a, const BoxRegion& b);
Rat symmetric_difference_measure(const BoxRegion& a, const BoxRegion& b);
// a is contained in b up to a null set. For finite unions of nondegenerate
// closed boxes this is the same as point-set containment.
bool covered_by(const BoxRegion& a, const BoxRegion& b);

// Dilation of a set about the center of b_center.
BoxRegion dilate_set_about(const Box& b_center, const BoxRegion& region, const Rat& factor);

Rat union_measure(const BoxFamily& family);
Rat union_measure(std::span<const Box> boxes);

// E_0 = Q_0, E_j = Q_j \ (Q_0 u ... u Q_{j-1}). Requires the decreasing tag.
std::vector<BoxRegion> increments(const BoxFamily& family);
// Same construction in the given order, without the ordering precondition.
std::vector<BoxRegion> increments_in_order(std::span<const Box> boxes);

struct IdentityCheck {
  bool holds = false;
  Rat defect;            // |LHS symmetric-difference RHS|
  bool ordered = false;  // family was nonincreasing in sidelength
};

// Compares  U_j (1+delta)_j Q_j  with  U_j (1+delta)_j E_j, where (1+delta)_j
// dilates about the center of Q_j and E_j are the increments in list order.
IdentityCheck check_dilation_identity(const BoxFamily& family, const Rat& delta);

// |U (1+delta)Q_j \ U Q_j|
Rat enlargement_excess(const BoxFamily& family, const Rat& delta);

// Every other box meets the center box and is no larger than it.
bool is_satellite(const BoxFamily& family, std::size_t center_index);

// U Q_j is inside 3 Q_center.
bool within_triple_of(const BoxFamily& family, std::size_t center_index);

}  // namespace tlab
