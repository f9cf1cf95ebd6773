#include "clouds/outcome_space.hpp"

#include <sstream>

#include "clouds/errors.hpp"

namespace clouds {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw ValidationError("outcome space must contain at least one element");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw ValidationError("empty element label");
    if (!index.emplace(labels[i], i).second) {
      throw ValidationError("duplicate element label '" + labels[i] + "'");
    }
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
  index_ = std::make_shared<const std::unordered_map<std::string, std::size_t>>(std::move(index));
}

std::size_t OutcomeSpace::index_of(std::string_view label) const {
  const auto it = index_->find(std::string(label));
  if (it == index_->end()) throw DomainError("unknown element '" + std::string(label) + "'");
  return it->second;
}

bool OutcomeSpace::contains(std::string_view label) const {
  return index_->count(std::string(label)) != 0;
}

EventSet EventSet::full(std::size_t n) {
  EventSet e(n);
  e.bits_.set();
  return e;
}

EventSet EventSet::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw SizeError("bit-mask events need at most 64 outcomes");
  EventSet e(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) e.bits_.set(i);
  }
  return e;
}

EventSet EventSet::from_indices(std::size_t n, std::initializer_list<std::size_t> indices) {
  return from_indices(n, std::vector<std::size_t>(indices));
}

EventSet EventSet::from_indices(std::size_t n, const std::vector<std::size_t>& indices) {
  EventSet e(n);
  for (auto i : indices) {
    if (i >= n) throw DomainError("outcome index out of range");
    e.bits_.set(i);
  }
  return e;
}

EventSet EventSet::from_labels(const OutcomeSpace& space, const std::vector<std::string>& labels) {
  EventSet e(space.size());
  for (const auto& l : labels) e.bits_.set(space.index_of(l));
  return e;
}

EventSet EventSet::parse(const OutcomeSpace& space, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw DomainError("unbalanced braces in event '" + std::string(text) + "'");
    text = trim(text.substr(1, text.size() - 2));
  }
  EventSet e(space.size());
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (item.empty()) throw DomainError("empty label in event list");
    e.bits_.set(space.index_of(item));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
    if (trim(text).empty()) throw DomainError("trailing comma in event list");
  }
  return e;
}

std::uint64_t EventSet::to_mask() const {
  if (bits_.size() > 64) throw SizeError("bit-mask events need at most 64 outcomes");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_.test(i)) m |= (std::uint64_t{1} << i);
  }
  return m;
}

std::vector<std::size_t> EventSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

EventSet EventSet::complement() const {
  EventSet e(*this);
  e.bits_.flip();
  return e;
}

void EventSet::check_same_universe(const EventSet& other) const {
  if (bits_.size() != other.bits_.size()) throw DomainError("events over different spaces");
}

EventSet& EventSet::operator&=(const EventSet& rhs) {
  check_same_universe(rhs);
  bits_ &= rhs.bits_;
  return *this;
}

EventSet& EventSet::operator|=(const EventSet& rhs) {
  check_same_universe(rhs);
  bits_ |= rhs.bits_;
  return *this;
}

EventSet& EventSet::operator-=(const EventSet& rhs) {
  check_same_universe(rhs);
  bits_ -= rhs.bits_;
  return *this;
}

bool operator<(const EventSet& a, const EventSet& b) {
  if (a.bits_.size() != b.bits_.size()) return a.bits_.size() < b.bits_.size();
  // Compare from the most significant outcome down.
  for (std::size_t k = a.bits_.size(); k-- > 0;) {
    if (a.bits_.test(k) != b.bits_.test(k)) return b.bits_.test(k);
  }
  return false;
}

std::string EventSet::to_string(const OutcomeSpace& space) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto i : indices()) {
    if (!first) os << ',';
    os << space.label(i);
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace clouds
