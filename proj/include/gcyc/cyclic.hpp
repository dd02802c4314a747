#pragma once

#include "gcyc/point.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gcyc {

/// One set A_i of a cyclic cover. Closedness is declared, not verified.
class SubsetSpec {
 public:
  using Membership = std::function<bool(const Point&)>;
  using Sampler = std::function<std::optional<Point>(std::mt19937_64&)>;

  SubsetSpec(Membership membership, Sampler sampler, std::string description)
      : membership_(std::move(membership)),
        sampler_(std::move(sampler)),
        description_(std::move(description)) {}

  /// Finite union of closed boxes. `band` widens membership by a boundary
  /// tolerance (0 keeps the exact closure, endpoints included).
  static SubsetSpec from_boxes(std::vector<Box> boxes, double band = 0.0);

  /// Predicate set sampled by rejection inside `domain` (at most `max_tries`
  /// draws per sample before the set is reported empty).
  static SubsetSpec from_predicate(Membership predicate, Box domain, std::string description,
                                   std::size_t max_tries = 10000);

  bool contains(const Point& x) const { return membership_(x); }
  std::optional<Point> sample(std::mt19937_64& rng) const { return sampler_(rng); }
  const std::string& description() const { return description_; }

 private:
  Membership membership_;
  Sampler sampler_;
  std::string description_;
};

/// Ordered sets A_1..A_p with A_{p+1} = A_1. Labels are 1-based throughout.
class CyclicCover {
 public:
  explicit CyclicCover(std::vector<SubsetSpec> subsets);

  int size() const { return static_cast<int>(subsets_.size()); }
  const SubsetSpec& subset(int label) const;
  /// Label of the successor set; next_label(p) == 1.
  int next_label(int label) const;
  const std::vector<SubsetSpec>& subsets() const { return subsets_; }

 private:
  std::vector<SubsetSpec> subsets_;
};

/// All labels i with x in A_i, ascending. Empty means x escaped the cover.
std::vector<int> locate(const CyclicCover& cover, const Point& x);

struct CyclicViolation {
  int from_label = 0;
  Point x;
  Point image;
  /// locate(cover, image); never contains next_label(from_label).
  std::vector<int> image_labels;
};

struct CyclicReport {
  struct PerSubset {
    int label = 0;
    bool pass = true;
    std::size_t samples = 0;
    std::size_t violations = 0;
    std::vector<CyclicViolation> witnesses;
  };

  std::vector<PerSubset> subsets;
  std::uint64_t seed = 0;
  /// Closedness of each A_i is an assumption, recorded here for reports.
  static constexpr const char* kClosednessNote = "closedness of each A_i is assumed, not verified";

  bool pass() const;
};

/// For each label i samples `count` points of A_i and checks T(x) in A_{i+1}.
/// Keeps up to `max_witnesses` violations per subset. Throws
/// PreconditionError if a subset sampler yields nothing (empty set).
CyclicReport validate_cyclic_cover(const CyclicCover& cover, const Operator& map,
                                   std::uint64_t seed, std::size_t count,
                                   std::size_t max_witnesses = 8);

}  // namespace gcyc
