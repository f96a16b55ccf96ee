#include <bit>

#include "abd/langlib.hpp"

namespace abd {

namespace {

std::string sign_string(const std::vector<bool>& s, char one, char zero) {
  std::string out;
  for (bool b : s) out.push_back(b ? one : zero);
  return out;
}

std::vector<bool> pattern(unsigned k, unsigned bits) {
  std::vector<bool> s(k);
  for (unsigned i = 0; i < k; ++i) s[i] = (bits >> i) & 1u;
  return s;
}

}  // namespace

Relation clause_relation(const std::vector<bool>& positive) {
  const unsigned k = static_cast<unsigned>(positive.size());
  Relation::Tuple falsifying = 0;
  for (unsigned i = 0; i < k; ++i) {
    if (!positive[i]) falsifying |= Relation::Tuple{1} << i;
  }
  return Relation::from_predicate(
      k, [&](Relation::Tuple t) { return t != falsifying; }, "CL" + sign_string(positive, '+', '-'));
}

std::optional<std::vector<bool>> match_clause(const Relation& r) {
  const unsigned k = r.arity();
  if (k == 0 || r.size() + 1 != (std::size_t{1} << k)) return std::nullopt;
  // The single missing tuple is the falsifying assignment.
  Relation::Tuple missing = 0;
  for (Relation::Tuple t : r.tuples()) {
    if (t != missing) break;
    ++missing;
  }
  std::vector<bool> positive(k);
  for (unsigned i = 0; i < k; ++i) positive[i] = !Relation::bit(missing, i);
  return positive;
}

Relation imp_relation() { return Relation(2, {0b00, 0b10, 0b11}, "IMP"); }

Relation parity_relation(unsigned k, bool odd) {
  return Relation::from_predicate(
      k, [&](Relation::Tuple t) { return (std::popcount(t) % 2 == 1) == odd; },
      "PAR" + std::to_string(k) + "_" + (odd ? "1" : "0"));
}

Relation equation_relation(unsigned k, unsigned p, unsigned q) {
  if (p < 1) throw PreconditionError("modulus must be positive");
  if (p > k + 1 || q > k + 1) throw PreconditionError("equation parameters need p,q <= k+1");
  return Relation::from_predicate(
      k, [&](Relation::Tuple t) { return static_cast<unsigned>(std::popcount(t)) % p == q % p; },
      "EQ" + std::to_string(k) + "_" + std::to_string(p) + "_" + std::to_string(q % p));
}

Relation exactly_one_relation(unsigned k) {
  return Relation::from_predicate(
      k, [](Relation::Tuple t) { return std::popcount(t) == 1; }, "X1_" + std::to_string(k));
}

Relation all_zero_relation(unsigned k) {
  return Relation(k, {0}, "ZERO" + std::to_string(k));
}

Relation nae_relation(const std::vector<bool>& sign) {
  const unsigned k = static_cast<unsigned>(sign.size());
  Relation::Tuple zero_s = 0;
  for (unsigned i = 0; i < k; ++i) {
    if (sign[i]) zero_s |= Relation::Tuple{1} << i;
  }
  const Relation::Tuple one_s = ~zero_s & Relation::all_ones(k);
  return Relation::from_predicate(
      k, [&](Relation::Tuple t) { return t != zero_s && t != one_s; },
      "NAE" + sign_string(sign, '1', '0'));
}

namespace {

ConstraintLanguage clauses_where(unsigned k, const std::string& schema,
                                 bool (*keep)(unsigned width, unsigned positives)) {
  ConstraintLanguage l({}, schema, k);
  for (unsigned w = 1; w <= k; ++w) {
    for (unsigned bits = 0; bits < (1u << w); ++bits) {
      const unsigned positives = static_cast<unsigned>(std::popcount(bits));
      if (keep(w, positives)) l.add(make_ref(clause_relation(pattern(w, bits))));
    }
  }
  return l;
}

}  // namespace

ConstraintLanguage k_cnf(unsigned k) {
  return clauses_where(k, "k-CNF", [](unsigned, unsigned) { return true; });
}
ConstraintLanguage k_cnf_pos(unsigned k) {
  return clauses_where(k, "k-CNF+", [](unsigned w, unsigned p) { return p == w; });
}
ConstraintLanguage k_cnf_neg(unsigned k) {
  return clauses_where(k, "k-CNF-", [](unsigned, unsigned p) { return p == 0; });
}
ConstraintLanguage horn(unsigned k) {
  return clauses_where(k, "Horn", [](unsigned, unsigned p) { return p <= 1; });
}
ConstraintLanguage dual_horn(unsigned k) {
  return clauses_where(k, "DualHorn", [](unsigned w, unsigned p) { return w - p <= 1; });
}

ConstraintLanguage imp() { return ConstraintLanguage({make_ref(imp_relation())}, "IMP", 2); }

ConstraintLanguage aff(unsigned k) {
  ConstraintLanguage l({}, "AFF", k);
  for (unsigned j = 1; j <= k; ++j) {
    for (bool odd : {false, true}) l.add(make_ref(parity_relation(j, odd)));
  }
  return l;
}

ConstraintLanguage equations(unsigned k) {
  ConstraintLanguage l({}, "Equations", k);
  for (unsigned j = 1; j <= k; ++j) {
    for (unsigned p = 2; p <= j + 1; ++p) {
      for (unsigned q = 0; q < p; ++q) {
        Relation r = equation_relation(j, p, q);
        if (!r.empty() && !r.is_full()) l.add(make_ref(std::move(r)));
      }
    }
  }
  return l;
}

ConstraintLanguage xsat_family(unsigned k) {
  ConstraintLanguage l({}, "XSAT", k);
  for (unsigned j = 1; j <= k; ++j) {
    l.add(make_ref(exactly_one_relation(j)));
    l.add(make_ref(all_zero_relation(j)));
  }
  return l;
}

ConstraintLanguage nae(unsigned k) {
  ConstraintLanguage l({}, "NAE", k);
  for (unsigned bits = 0; bits < (1u << k); ++bits) l.add(make_ref(nae_relation(pattern(k, bits))));
  return l;
}

}  // namespace abd
