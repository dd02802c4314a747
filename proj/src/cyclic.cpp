#include "gcyc/cyclic.hpp"

#include "gcyc/errors.hpp"

#include <algorithm>

namespace gcyc {

SubsetSpec SubsetSpec::from_boxes(std::vector<Box> boxes, double band) {
  if (boxes.empty()) throw PreconditionError("box union must contain at least one box");
  for (const auto& b : boxes) {
    if (b.dimension() != boxes.front().dimension())
      throw PreconditionError("box union mixes dimensions");
  }
  std::string description;
  for (const auto& b : boxes) {
    if (!description.empty()) description += " u ";
    description += "[" + format_point(b.lower) + ", " + format_point(b.upper) + "]";
  }
  auto membership = [boxes, band](const Point& x) {
    return std::any_of(boxes.begin(), boxes.end(), [&](const Box& b) { return b.contains(x, band); });
  };
  auto sampler = [boxes](std::mt19937_64& rng) -> std::optional<Point> {
    std::uniform_int_distribution<std::size_t> pick(0, boxes.size() - 1);
    const Box& b = boxes[boxes.size() == 1 ? 0 : pick(rng)];
    if (!b.bounded()) return std::nullopt;
    return b.sample(rng);
  };
  return SubsetSpec(std::move(membership), std::move(sampler), std::move(description));
}

SubsetSpec SubsetSpec::from_predicate(Membership predicate, Box domain, std::string description,
                                      std::size_t max_tries) {
  auto sampler = [predicate, domain, max_tries](std::mt19937_64& rng) -> std::optional<Point> {
    for (std::size_t i = 0; i < max_tries; ++i) {
      Point p = domain.sample(rng);
      if (predicate(p)) return p;
    }
    return std::nullopt;
  };
  return SubsetSpec(std::move(predicate), std::move(sampler), std::move(description));
}

CyclicCover::CyclicCover(std::vector<SubsetSpec> subsets) : subsets_(std::move(subsets)) {
  if (subsets_.empty()) throw PreconditionError("cyclic cover needs at least one subset");
}

const SubsetSpec& CyclicCover::subset(int label) const {
  if (label < 1 || label > size())
    throw PreconditionError("subset label " + std::to_string(label) + " out of range 1.." +
                            std::to_string(size()));
  return subsets_[static_cast<std::size_t>(label - 1)];
}

int CyclicCover::next_label(int label) const {
  if (label < 1 || label > size())
    throw PreconditionError("subset label " + std::to_string(label) + " out of range");
  return label % size() + 1;
}

std::vector<int> locate(const CyclicCover& cover, const Point& x) {
  std::vector<int> labels;
  for (int i = 1; i <= cover.size(); ++i) {
    if (cover.subset(i).contains(x)) labels.push_back(i);
  }
  return labels;
}

bool CyclicReport::pass() const {
  return std::all_of(subsets.begin(), subsets.end(), [](const PerSubset& s) { return s.pass; });
}

CyclicReport validate_cyclic_cover(const CyclicCover& cover, const Operator& map,
                                   std::uint64_t seed, std::size_t count,
                                   std::size_t max_witnesses) {
  if (count < 1) throw PreconditionError("validate_cyclic_cover: count must be >= 1");
  CyclicReport report;
  report.seed = seed;
  for (int i = 1; i <= cover.size(); ++i) {
    const int next = cover.next_label(i);
    const SubsetSpec& from = cover.subset(i);
    const SubsetSpec& to = cover.subset(next);
    auto rng = make_rng(seed, static_cast<std::uint64_t>(i));

    CyclicReport::PerSubset entry;
    entry.label = i;
    for (std::size_t n = 0; n < count; ++n) {
      auto x = from.sample(rng);
      if (!x)
        throw PreconditionError("subset A_" + std::to_string(i) + " (" + from.description() +
                                ") produced no sample; it may be empty");
      Point image = map(*x);
      ++entry.samples;
      if (!to.contains(image)) {
        ++entry.violations;
        entry.pass = false;
        if (entry.witnesses.size() < max_witnesses)
          entry.witnesses.push_back({i, *x, image, locate(cover, image)});
      }
    }
    report.subsets.push_back(std::move(entry));
  }
  return report;
}

}  // namespace gcyc
