#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace clouds {

/// Finite set of labelled outcomes. Listing order is storage order only.
class OutcomeSpace {
 public:
  OutcomeSpace() = default;
  explicit OutcomeSpace(std::vector<std::string> labels);
  OutcomeSpace(std::initializer_list<std::string> labels)
      : OutcomeSpace(std::vector<std::string>(labels)) {}

  std::size_t size() const { return labels_->size(); }
  const std::string& label(std::size_t i) const { return (*labels_)[i]; }
  const std::vector<std::string>& labels() const { return *labels_; }

  /// Storage index of `label`; throws DomainError for unknown labels.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  // Shared so that copying events and distributions stays cheap.
  std::shared_ptr<const std::vector<std::string>> labels_ =
      std::make_shared<const std::vector<std::string>>();
  std::shared_ptr<const std::unordered_map<std::string, std::size_t>> index_ =
      std::make_shared<const std::unordered_map<std::string, std::size_t>>();
};

/// Subset of an outcome space, stored as a bitset over storage order.
class EventSet {
 public:
  EventSet() = default;
  /// Empty event over a space of `n` outcomes.
  explicit EventSet(std::size_t n) : bits_(n) {}

  static EventSet empty(std::size_t n) { return EventSet(n); }
  static EventSet full(std::size_t n);
  /// Bit i of `mask` is outcome i. Requires n <= 64.
  static EventSet from_mask(std::size_t n, std::uint64_t mask);
  static EventSet from_indices(std::size_t n, std::initializer_list<std::size_t> indices);
  static EventSet from_indices(std::size_t n, const std::vector<std::size_t>& indices);
  /// Event from labels; throws DomainError on unknown labels.
  static EventSet from_labels(const OutcomeSpace& space, const std::vector<std::string>& labels);
  /// Parses "v,w" or "{v,w}"; empty text or "{}" is the empty event.
  static EventSet parse(const OutcomeSpace& space, std::string_view text);

  std::size_t universe_size() const { return bits_.size(); }
  std::size_t count() const { return bits_.count(); }
  bool is_empty() const { return bits_.none(); }
  bool is_full() const { return bits_.all(); }
  bool contains(std::size_t i) const { return bits_.test(i); }
  void insert(std::size_t i) { bits_.set(i); }
  void erase(std::size_t i) { bits_.reset(i); }

  std::uint64_t to_mask() const;
  std::vector<std::size_t> indices() const;

  EventSet complement() const;
  bool is_subset_of(const EventSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const EventSet& other) const { return bits_.intersects(other.bits_); }

  EventSet& operator&=(const EventSet& rhs);
  EventSet& operator|=(const EventSet& rhs);
  /// Set difference.
  EventSet& operator-=(const EventSet& rhs);
  friend EventSet operator&(EventSet a, const EventSet& b) { return a &= b; }
  friend EventSet operator|(EventSet a, const EventSet& b) { return a |= b; }
  friend EventSet operator-(EventSet a, const EventSet& b) { return a -= b; }

  friend bool operator==(const EventSet& a, const EventSet& b) { return a.bits_ == b.bits_; }
  /// Numeric order of the bit encoding (outcome 0 is the least significant bit).
  friend bool operator<(const EventSet& a, const EventSet& b);

  /// "{v,w}" using the labels of `space`.
  std::string to_string(const OutcomeSpace& space) const;

 private:
  void check_same_universe(const EventSet& other) const;

  boost::dynamic_bitset<> bits_;
};

}  // namespace clouds
