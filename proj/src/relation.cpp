#include "tolift/relation.hpp"

#include <algorithm>

#include "tolift/error.hpp"

namespace tolift {

namespace {

  void require_same_size(FiniteAlgebra const& alg, BinaryRelation const& r) {
    if (alg.size() != r.size()) {
      throw SizeMismatch("relation on " + std::to_string(r.size())
                         + " elements, algebra has "
                         + std::to_string(alg.size()));
    }
  }

  // Applies every operation to every tuple of pairs drawn from `members`,
  // calling `visit(op, tuple, image)` until it returns false.
  template <typename Visit>
  bool for_each_image(FiniteAlgebra const& alg,
                      std::vector<Pair> const& members, Visit&& visit) {
    std::vector<Element> pick, left, right;
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      std::size_t const k = alg.arity(op);
      if (k > 0 && members.empty()) {
        continue;
      }
      pick.assign(k, 0);
      left.resize(k);
      right.resize(k);
      do {
        for (std::size_t i = 0; i < k; ++i) {
          left[i] = members[pick[i]].first;
          right[i] = members[pick[i]].second;
        }
        Pair const image{alg.apply(op, left), alg.apply(op, right)};
        if (!visit(op, pick, image)) {
          return false;
        }
      } while (next_tuple(pick, members.size()));
    }
    return true;
  }

}  // namespace

BinaryRelation BinaryRelation::diagonal(std::size_t n) {
  BinaryRelation r(n);
  for (Element i = 0; i < n; ++i) {
    r.insert(i, i);
  }
  return r;
}

BinaryRelation BinaryRelation::full(std::size_t n) {
  BinaryRelation r(n);
  r.bits_.assign(n * n, true);
  return r;
}

BinaryRelation BinaryRelation::from_pairs(std::size_t n,
                                          std::vector<Pair> const& ps) {
  BinaryRelation r(n);
  for (auto const& [a, b] : ps) {
    if (a >= n || b >= n) {
      throw OutOfRange("pair (" + std::to_string(a) + "," + std::to_string(b)
                       + ") outside universe of size " + std::to_string(n));
    }
    r.insert(a, b);
  }
  return r;
}

bool BinaryRelation::insert(Element i, Element j) {
  auto ref = bits_[i * n_ + j];
  if (ref) {
    return false;
  }
  ref = true;
  return true;
}

std::size_t BinaryRelation::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<Pair> BinaryRelation::pairs() const {
  std::vector<Pair> out;
  for (Element i = 0; i < n_; ++i) {
    for (Element j = 0; j < n_; ++j) {
      if (contains(i, j)) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

bool BinaryRelation::is_reflexive() const {
  for (Element i = 0; i < n_; ++i) {
    if (!contains(i, i)) {
      return false;
    }
  }
  return true;
}

bool BinaryRelation::is_symmetric() const {
  for (Element i = 0; i < n_; ++i) {
    for (Element j = i + 1; j < n_; ++j) {
      if (contains(i, j) != contains(j, i)) {
        return false;
      }
    }
  }
  return true;
}

bool BinaryRelation::is_transitive() const {
  for (Element i = 0; i < n_; ++i) {
    for (Element j = 0; j < n_; ++j) {
      if (!contains(i, j)) {
        continue;
      }
      for (Element k = 0; k < n_; ++k) {
        if (contains(j, k) && !contains(i, k)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool BinaryRelation::is_subset_of(BinaryRelation const& other) const {
  if (n_ != other.n_) {
    return false;
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) {
      return false;
    }
  }
  return true;
}

bool canonical_less(BinaryRelation const& a, BinaryRelation const& b) {
  auto const ca = a.count();
  auto const cb = b.count();
  if (ca != cb) {
    return ca < cb;
  }
  return a.bits_ < b.bits_;
}

BinaryRelation intersection(BinaryRelation const& a, BinaryRelation const& b) {
  if (a.size() != b.size()) {
    throw SizeMismatch("intersection of relations on different universes");
  }
  BinaryRelation r(a.size());
  for (auto const& [i, j] : a.pairs()) {
    if (b.contains(i, j)) {
      r.insert(i, j);
    }
  }
  return r;
}

std::uint64_t fingerprint(FiniteAlgebra const& alg) {
  std::uint64_t h = 14695981039346656037ULL;
  auto const mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(alg.size());
  for (std::size_t op = 0; op < alg.signature().size(); ++op) {
    for (char c : alg.signature()[op].name) {
      mix(static_cast<unsigned char>(c));
    }
    mix(alg.arity(op));
    for (Element e : alg.table(op)) {
      mix(e);
    }
  }
  return h;
}

CompatibilityResult is_compatible(FiniteAlgebra const& alg,
                                  BinaryRelation const& r) {
  require_same_size(alg, r);
  auto const members = r.pairs();
  CompatibilityResult result;
  for_each_image(alg, members,
                 [&](std::size_t op, std::vector<Element> const& pick,
                     Pair const& image) {
                   if (r.contains(image.first, image.second)) {
                     return true;
                   }
                   CompatibilityViolation v{op, {}, image};
                   for (Element p : pick) {
                     v.arguments.push_back(members[p]);
                   }
                   result = {false, std::move(v)};
                   return false;
                 });
  return result;
}

bool is_tolerance(FiniteAlgebra const& alg, BinaryRelation const& r) {
  require_same_size(alg, r);
  return r.is_reflexive() && r.is_symmetric() && is_compatible(alg, r).compatible;
}

bool is_congruence(FiniteAlgebra const& alg, BinaryRelation const& r) {
  return is_tolerance(alg, r) && r.is_transitive();
}

Tolerance Tolerance::verify(FiniteAlgebra const& alg, BinaryRelation r) {
  require_same_size(alg, r);
  if (!r.is_reflexive()) {
    throw NotATolerance("not a tolerance: relation is not reflexive");
  }
  if (!r.is_symmetric()) {
    throw NotATolerance("not a tolerance: relation is not symmetric");
  }
  if (auto const c = is_compatible(alg, r); !c) {
    auto const& v = *c.violation;
    std::string args;
    for (auto const& [a, b] : v.arguments) {
      args += (args.empty() ? "" : " ") + std::string("(") + std::to_string(a)
              + "," + std::to_string(b) + ")";
    }
    throw NotATolerance("not a tolerance: '" + alg.signature()[v.op].name
                        + "' maps " + args + " to ("
                        + std::to_string(v.image.first) + ","
                        + std::to_string(v.image.second)
                        + "), which is not related");
  }
  return Tolerance(std::move(r), fingerprint(alg));
}

Congruence Congruence::verify(FiniteAlgebra const& alg, BinaryRelation r) {
  if (!r.is_transitive()) {
    throw NotACongruence("not a congruence: relation is not transitive");
  }
  try {
    return Congruence(Tolerance::verify(alg, std::move(r)));
  } catch (NotATolerance const& e) {
    throw NotACongruence(e.what());
  }
}

ElementMap::ElementMap(std::size_t codomain, std::vector<Element> images)
    : codomain_(codomain), images_(std::move(images)) {
  for (Element e : images_) {
    if (e >= codomain_) {
      throw OutOfRange("map image " + std::to_string(e)
                       + " outside codomain of size "
                       + std::to_string(codomain_));
    }
  }
}

ElementMap ElementMap::identity(std::size_t n) {
  std::vector<Element> images(n);
  for (Element i = 0; i < n; ++i) {
    images[i] = i;
  }
  return ElementMap(n, std::move(images));
}

bool ElementMap::is_surjective() const {
  std::vector<bool> hit(codomain_, false);
  for (Element e : images_) {
    hit[e] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

Tolerance tolerance_generated(FiniteAlgebra const& alg,
                              std::vector<Pair> const& pairs) {
  auto rel = BinaryRelation::diagonal(alg.size());
  for (auto const& [a, b] : pairs) {
    if (a >= alg.size() || b >= alg.size()) {
      throw OutOfRange("pair (" + std::to_string(a) + "," + std::to_string(b)
                       + ") outside universe of size "
                       + std::to_string(alg.size()));
    }
    rel.insert(a, b);
    rel.insert(b, a);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto const members = rel.pairs();
    for_each_image(alg, members,
                   [&](std::size_t, std::vector<Element> const&,
                       Pair const& image) {
                     changed |= rel.insert(image.first, image.second);
                     changed |= rel.insert(image.second, image.first);
                     return true;
                   });
  }
  return Tolerance::verify(alg, std::move(rel));
}

std::vector<Tolerance> enumerate_tolerances(FiniteAlgebra const& alg,
                                            std::size_t cap_n) {
  std::size_t const n = alg.size();
  if (n > cap_n) {
    throw CapExceeded("enumerating tolerances of a " + std::to_string(n)
                      + "-element algebra exceeds the cap of "
                      + std::to_string(cap_n));
  }
  std::vector<Pair> off;
  for (Element i = 0; i < n; ++i) {
    for (Element j = i + 1; j < n; ++j) {
      off.emplace_back(i, j);
    }
  }
  if (off.size() >= 63) {
    throw CapExceeded("too many candidate relations to enumerate");
  }
  std::vector<Tolerance> out;
  std::uint64_t const candidates = std::uint64_t{1} << off.size();
  for (std::uint64_t mask = 0; mask < candidates; ++mask) {
    auto rel = BinaryRelation::diagonal(n);
    for (std::size_t b = 0; b < off.size(); ++b) {
      if ((mask >> b) & 1U) {
        rel.insert(off[b].first, off[b].second);
        rel.insert(off[b].second, off[b].first);
      }
    }
    if (is_compatible(alg, rel)) {
      out.push_back(Tolerance::verify(alg, std::move(rel)));
    }
  }
  std::sort(out.begin(), out.end(),
            [](Tolerance const& a, Tolerance const& b) {
              return canonical_less(a.relation(), b.relation());
            });
  return out;
}

BinaryRelation kernel(ElementMap const& m) {
  BinaryRelation r(m.domain());
  for (Element i = 0; i < m.domain(); ++i) {
    for (Element j = 0; j < m.domain(); ++j) {
      if (m(i) == m(j)) {
        r.insert(i, j);
      }
    }
  }
  return r;
}

Congruence kernel(ElementMap const& m, FiniteAlgebra const& domain_alg) {
  return Congruence::verify(domain_alg, kernel(m));
}

BinaryRelation image_under(ElementMap const& m, BinaryRelation const& r) {
  if (r.size() != m.domain()) {
    throw SizeMismatch("relation on " + std::to_string(r.size())
                       + " elements, map domain has "
                       + std::to_string(m.domain()));
  }
  BinaryRelation out(m.codomain());
  for (auto const& [x, y] : r.pairs()) {
    out.insert(m(x), m(y));
  }
  return out;
}

}  // namespace tolift
