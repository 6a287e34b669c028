#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epigame/errors.hpp"
#include "epigame/rational.hpp"

namespace epigame {

/// Ordered set of state labels.  The order given at construction is the
/// canonical state order everywhere (events, partitions, serialization).
class FiniteSpace {
public:
  explicit FiniteSpace(std::vector<std::string> states);

  std::size_t size() const { return states_.size(); }
  const std::string& label(std::size_t index) const { return states_.at(index); }
  const std::vector<std::string>& labels() const { return states_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

private:
  std::vector<std::string> states_;
};

/// Subset of state indices, kept sorted and duplicate-free.
class Event {
public:
  Event() = default;
  explicit Event(std::vector<std::size_t> members);

  static Event full(std::size_t space_size);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t state) const;
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t max_member() const;  // requires non-empty

  Event intersect(const Event& other) const;

  friend bool operator==(const Event&, const Event&) = default;
  friend auto operator<=>(const Event& a, const Event& b) { return a.members_ <=> b.members_; }

private:
  std::vector<std::size_t> members_;
};

/// Partition of a FiniteSpace into non-empty disjoint blocks.  Blocks are
/// stored in canonical order (ascending first member).
class Partition {
public:
  Partition(FiniteSpace space, std::vector<Event> blocks);

  const FiniteSpace& space() const { return space_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Event& block(std::size_t index) const { return blocks_.at(index); }
  const std::vector<Event>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t state) const { return block_of_state_.at(state); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.space_ == b.space_ && a.blocks_ == b.blocks_;
  }

private:
  FiniteSpace space_;
  std::vector<Event> blocks_;
  std::vector<std::size_t> block_of_state_;
};

/// Probability measure on a FiniteSpace: one weight per state, each >= 0,
/// summing to exactly 1.
class Measure {
public:
  Measure(FiniteSpace space, std::vector<Rational> weights);

  const FiniteSpace& space() const { return space_; }
  const Rational& weight(std::size_t state) const { return weights_.at(state); }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational of(const Event& event) const;
  bool strictly_positive() const;

  friend bool operator==(const Measure& a, const Measure& b) {
    return a.space_ == b.space_ && a.weights_ == b.weights_;
  }

private:
  FiniteSpace space_;
  std::vector<Rational> weights_;
};

/// Conditional measure given `event`.  Throws NullConditioningEvent when the
/// event has measure zero.  Unreachable from validated games (priors are
/// strictly positive) but kept for direct library use.
Measure posterior(const Measure& measure, const Event& event);

/// Coarsest common refinement.  Blocks are the non-empty intersections of
/// one block per input, in canonical order.  Throws MixedSpaces when the
/// partitions live on different spaces.
Partition join(std::span<const Partition> partitions);

/// True iff `values` (one entry per state) is constant on every block.
template <typename T>
bool is_measurable(std::span<const T> values, const Partition& partition) {
  for (const Event& block : partition.blocks()) {
    const T& first = values[block.members().front()];
    for (std::size_t state : block.members()) {
      if (!(values[state] == first)) return false;
    }
  }
  return true;
}

/// True iff the two measures share the same null sets.
/// Throws MixedSpaces when the spaces differ.
bool equivalent(const Measure& a, const Measure& b);

struct TotalExpectationReport {
  Rational lhs;  // E(f)
  Rational rhs;  // sum over blocks of m(B) * E(f | B), null blocks skipped
  bool equal = false;
};

/// Evaluates both sides of the law of total expectation for f given the
/// partition.  `values` holds f per state.
TotalExpectationReport total_expectation_check(std::span<const Rational> values,
                                               const Measure& measure,
                                               const Partition& partition);

}  // namespace epigame
