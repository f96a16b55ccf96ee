#include <algorithm>
#include <sstream>

#include "abd/core.hpp"

namespace abd {

namespace {

constexpr unsigned kBitmapArity = 16;

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Literal Literal::from_int(long v) {
  if (v == 0) throw StructuralError("literal 0 is not a variable");
  return v > 0 ? Literal{static_cast<Var>(v), true} : Literal{static_cast<Var>(-v), false};
}

Relation::Relation(unsigned arity, std::vector<Tuple> tuples, std::string name)
    : arity_(arity), tuples_(std::move(tuples)), name_(std::move(name)) {
  if (arity_ > kMaxArity) throw StructuralError("relation arity exceeds " + std::to_string(kMaxArity));
  const Tuple limit = all_ones(arity_);
  for (Tuple t : tuples_) {
    if ((t & ~limit) != 0) throw StructuralError("tuple wider than relation arity");
  }
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
  finish();
}

Relation Relation::from_predicate(unsigned arity, const std::function<bool(Tuple)>& pred,
                                  std::string name) {
  if (arity > kMaxArity) throw StructuralError("relation arity exceeds " + std::to_string(kMaxArity));
  std::vector<Tuple> tuples;
  const std::uint64_t count = std::uint64_t{1} << arity;
  for (std::uint64_t t = 0; t < count; ++t) {
    if (pred(static_cast<Tuple>(t))) tuples.push_back(static_cast<Tuple>(t));
  }
  return Relation(arity, std::move(tuples), std::move(name));
}

void Relation::finish() {
  hash_ = mix(std::hash<unsigned>{}(arity_), tuples_.size());
  for (Tuple t : tuples_) hash_ = mix(hash_, t);
  if (arity_ <= kBitmapArity) {
    bitmap_.assign(((std::size_t{1} << arity_) + 63) / 64, 0);
    for (Tuple t : tuples_) bitmap_[t >> 6] |= std::uint64_t{1} << (t & 63);
  }
}

bool Relation::contains(Tuple t) const noexcept {
  if (!bitmap_.empty()) {
    if (t >> arity_ != 0) return false;
    return ((bitmap_[t >> 6] >> (t & 63)) & 1u) != 0;
  }
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

bool Relation::is_full() const noexcept { return tuples_.size() == (std::size_t{1} << arity_); }

Relation Relation::with_name(std::string name) const {
  Relation copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

std::string Relation::tuple_string(Tuple t) const {
  std::string s;
  s.reserve(arity_);
  for (unsigned i = 0; i < arity_; ++i) s.push_back(bit(t, i) ? '1' : '0');
  return s;
}

std::string Relation::describe() const {
  std::ostringstream out;
  out << (name_.empty() ? "R" : name_) << "/" << arity_ << "{";
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    if (i) out << ";";
    out << (arity_ == 0 ? "()" : tuple_string(tuples_[i]));
  }
  out << "}";
  return out.str();
}

namespace rel {

RelationRef bottom() {
  static const RelationRef r = make_ref(Relation(1, {0b0}, "BOT"));
  return r;
}
RelationRef top() {
  static const RelationRef r = make_ref(Relation(1, {0b1}, "TOP"));
  return r;
}
RelationRef false0() {
  static const RelationRef r = make_ref(Relation(0, {}, "F0"));
  return r;
}
RelationRef true0() {
  static const RelationRef r = make_ref(Relation(0, {0}, "T0"));
  return r;
}
RelationRef neq() {
  static const RelationRef r = make_ref(Relation(2, {0b10, 0b01}, "NEQ"));
  return r;
}

}  // namespace rel

}  // namespace abd
