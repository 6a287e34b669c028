#include "epigame/measure.hpp"

#include <algorithm>
#include <set>

namespace epigame {

FiniteSpace::FiniteSpace(std::vector<std::string> states) : states_(std::move(states)) {
  if (states_.empty()) fail(ErrorCode::ValidationError, "states: must be non-empty");
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].empty())
      fail(ErrorCode::ValidationError, "states[" + std::to_string(i) + "]: empty label");
    if (!seen.insert(states_[i]).second)
      fail(ErrorCode::ValidationError, "states: duplicate label \"" + states_[i] + "\"");
  }
}

std::optional<std::size_t> FiniteSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i] == label) return i;
  }
  return std::nullopt;
}

Event::Event(std::vector<std::size_t> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Event Event::full(std::size_t space_size) {
  std::vector<std::size_t> all(space_size);
  for (std::size_t i = 0; i < space_size; ++i) all[i] = i;
  return Event(std::move(all));
}

bool Event::contains(std::size_t state) const {
  return std::binary_search(members_.begin(), members_.end(), state);
}

std::size_t Event::max_member() const { return members_.back(); }

Event Event::intersect(const Event& other) const {
  std::vector<std::size_t> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  return Event(std::move(out));
}

Partition::Partition(FiniteSpace space, std::vector<Event> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  if (blocks_.empty()) fail(ErrorCode::ValidationError, "partition: no blocks");
  block_of_state_.assign(space_.size(), blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Event& block = blocks_[b];
    if (block.empty())
      fail(ErrorCode::ValidationError, "partition: block " + std::to_string(b) + " is empty");
    if (block.max_member() >= space_.size())
      fail(ErrorCode::ValidationError,
           "partition: block " + std::to_string(b) + " references a state outside the space");
    for (std::size_t state : block.members()) {
      if (block_of_state_[state] != blocks_.size())
        fail(ErrorCode::ValidationError, "partition: state \"" + space_.label(state) +
                                             "\" appears in more than one block");
      block_of_state_[state] = b;
    }
  }
  for (std::size_t state = 0; state < space_.size(); ++state) {
    if (block_of_state_[state] == blocks_.size())
      fail(ErrorCode::ValidationError,
           "partition: state \"" + space_.label(state) + "\" is not covered");
  }
  // Canonical block order: ascending first member.  Recompute the lookup.
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Event& a, const Event& b) { return a.members().front() < b.members().front(); });
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t state : blocks_[b].members()) block_of_state_[state] = b;
  }
}

Measure::Measure(FiniteSpace space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size())
    fail(ErrorCode::ValidationError, "measure: expected " + std::to_string(space_.size()) +
                                         " weights, got " + std::to_string(weights_.size()));
  Rational total = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0)
      fail(ErrorCode::ValidationError,
           "measure: negative weight on state \"" + space_.label(i) + "\"");
    total += weights_[i];
  }
  if (total != 1)
    fail(ErrorCode::ValidationError,
         "measure: weights sum to " + format_rational(total) + ", expected 1");
}

Rational Measure::of(const Event& event) const {
  Rational total = 0;
  for (std::size_t state : event.members()) total += weights_.at(state);
  return total;
}

bool Measure::strictly_positive() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const Rational& w) { return w > 0; });
}

Measure posterior(const Measure& measure, const Event& event) {
  if (!event.empty() && event.max_member() >= measure.space().size())
    fail(ErrorCode::ValidationError, "posterior: event references a state outside the space");
  Rational mass = measure.of(event);
  if (mass == 0)
    fail(ErrorCode::NullConditioningEvent, "posterior: conditioning event has measure zero");
  std::vector<Rational> weights(measure.space().size(), Rational(0));
  for (std::size_t state : event.members()) weights[state] = measure.weight(state) / mass;
  return Measure(measure.space(), std::move(weights));
}

Partition join(std::span<const Partition> partitions) {
  if (partitions.empty()) fail(ErrorCode::ValidationError, "join: no partitions given");
  const FiniteSpace& space = partitions.front().space();
  for (const Partition& p : partitions) {
    if (!(p.space() == space))
      fail(ErrorCode::MixedSpaces, "join: partitions live on different state spaces");
  }
  // Group states by their tuple of block indices; two states share a join
  // block iff no partition separates them.
  std::vector<Event> blocks;
  std::vector<bool> placed(space.size(), false);
  for (std::size_t s = 0; s < space.size(); ++s) {
    if (placed[s]) continue;
    std::vector<std::size_t> members{s};
    for (std::size_t t = s + 1; t < space.size(); ++t) {
      if (placed[t]) continue;
      bool together = std::all_of(partitions.begin(), partitions.end(), [&](const Partition& p) {
        return p.block_of(s) == p.block_of(t);
      });
      if (together) members.push_back(t);
    }
    for (std::size_t m : members) placed[m] = true;
    blocks.emplace_back(std::move(members));
  }
  return Partition(space, std::move(blocks));
}

bool equivalent(const Measure& a, const Measure& b) {
  if (!(a.space() == b.space()))
    fail(ErrorCode::MixedSpaces, "equivalent: measures live on different state spaces");
  for (std::size_t i = 0; i < a.space().size(); ++i) {
    if ((a.weight(i) == 0) != (b.weight(i) == 0)) return false;
  }
  return true;
}

TotalExpectationReport total_expectation_check(std::span<const Rational> values,
                                               const Measure& measure,
                                               const Partition& partition) {
  if (!(measure.space() == partition.space()))
    fail(ErrorCode::MixedSpaces, "total_expectation_check: measure and partition spaces differ");
  if (values.size() != measure.space().size())
    fail(ErrorCode::ValidationError, "total_expectation_check: expected " +
                                         std::to_string(measure.space().size()) + " values");
  TotalExpectationReport report;
  report.lhs = 0;
  for (std::size_t s = 0; s < values.size(); ++s) report.lhs += measure.weight(s) * values[s];
  report.rhs = 0;
  for (const Event& block : partition.blocks()) {
    Rational mass = measure.of(block);
    if (mass == 0) continue;
    Measure conditional = posterior(measure, block);
    Rational expectation = 0;
    for (std::size_t s : block.members()) expectation += conditional.weight(s) * values[s];
    report.rhs += mass * expectation;
  }
  report.equal = report.lhs == report.rhs;
  return report;
}

}  // namespace epigame
