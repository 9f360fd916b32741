#include "d3/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "d3/error.hpp"

namespace d3 {

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x])
      throw Error(ErrorKind::BadPermutation, "images do not form a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint32_t> im(degree);
  for (std::size_t i = 0; i < degree; ++i)
    im[i] = static_cast<std::uint32_t>(i);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<std::uint32_t> im(degree);
  for (std::size_t i = 0; i < degree; ++i)
    im[i] = static_cast<std::uint32_t>(i);
  std::vector<bool> used(degree, false);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto fail = [&](const std::string &why) {
    throw Error(ErrorKind::BadPermutation,
                "bad cycle notation '" + std::string(text) + "' at column " + std::to_string(pos + 1) + ": " + why);
  };
  skip_ws();
  if (pos == text.size())
    fail("empty string");
  while (pos < text.size()) {
    if (text[pos] != '(')
      fail("expected '('");
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected a point or ')'");
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (v >= degree)
          fail("point out of range for degree " + std::to_string(degree));
        ++pos;
      }
      if (used[v])
        fail("point " + std::to_string(v) + " repeated");
      used[v] = true;
      cycle.push_back(static_cast<std::uint32_t>(v));
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      im[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i)
      return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    im[images_[i]] = static_cast<std::uint32_t>(i);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (seen[s] || images_[s] == s)
      continue;
    out += '(';
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first)
        out += ' ';
      out += std::to_string(x);
      first = false;
      x = images_[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation &s, const Permutation &t) {
  if (s.degree() != t.degree())
    throw Error(ErrorKind::BadPermutation, "composing permutations of different degrees");
  Permutation r;
  r.images_.resize(s.degree());
  for (std::size_t x = 0; x < s.degree(); ++x)
    r.images_[x] = s.images_[t.images_[x]];
  return r;
}

// ---------------------------------------------------------------- PermGroup

std::int64_t PermGroup::index_of(const Permutation &p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it != elements_.end() && *it == p)
    return it - elements_.begin();
  return -1;
}

bool PermGroup::is_subgroup_of(const PermGroup &g) const {
  if (degree_ != g.degree_)
    return false;
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Permutation &p) { return g.contains(p); }) &&
         g.order() % order() == 0;
}

bool PermGroup::is_normal_in(const PermGroup &g) const {
  if (!is_subgroup_of(g))
    return false;
  for (const auto &x : g.generators())
    for (const auto &n : generators_)
      if (!contains(x * n * x.inverse()))
        return false;
  return true;
}

PermGroup generate(std::size_t degree, const std::vector<Permutation> &generators, std::size_t cap) {
  if (cap < 1)
    throw Error(ErrorKind::InvalidInput, "group order cap must be positive");
  for (const auto &g : generators)
    if (g.degree() != degree)
      throw Error(ErrorKind::BadPermutation,
                  "generator " + g.to_string() + " has degree " + std::to_string(g.degree()) +
                      ", expected " + std::to_string(degree));
  std::set<Permutation> seen;
  std::deque<Permutation> queue;
  Permutation id = Permutation::identity(degree);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto &s : generators) {
      Permutation y = x * s;
      if (seen.insert(y).second) {
        if (seen.size() > cap)
          throw Error(ErrorKind::CapExceeded,
                      "group closure exceeds the order cap of " + std::to_string(cap));
        queue.push_back(std::move(y));
      }
    }
  }
  PermGroup g;
  g.degree_ = degree;
  for (const auto &s : generators)
    if (!s.is_identity() && std::find(g.generators_.begin(), g.generators_.end(), s) == g.generators_.end())
      g.generators_.push_back(s);
  g.elements_.assign(seen.begin(), seen.end());
  std::size_t n = g.elements_.size();
  g.table_.resize(n * n);
  g.inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g.table_[i * n + j] = static_cast<std::uint32_t>(g.index_of(g.elements_[i] * g.elements_[j]));
  for (std::size_t i = 0; i < n; ++i)
    g.inverse_[i] = static_cast<std::uint32_t>(g.index_of(g.elements_[i].inverse()));
  return g;
}

PermGroup subgroup(const PermGroup &g, const std::vector<Permutation> &generators) {
  for (const auto &s : generators)
    if (!g.contains(s))
      throw Error(ErrorKind::NotSubgroup, s.to_string() + " is not an element of the ambient group");
  return generate(g.degree(), generators, g.order());
}

PermGroup normal_closure(const PermGroup &g, const PermGroup &k) {
  if (!k.is_subgroup_of(g))
    throw Error(ErrorKind::NotSubgroup, "normal closure: K is not a subgroup of G");
  std::vector<Permutation> gens = k.generators();
  PermGroup n = generate(g.degree(), gens, g.order());
  for (bool grown = true; grown;) {
    grown = false;
    for (const auto &x : g.generators()) {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Permutation c = x * gens[i] * x.inverse();
        if (!n.contains(c)) {
          gens.push_back(c);
          n = generate(g.degree(), gens, g.order());
          grown = true;
        }
      }
    }
  }
  return n;
}

std::vector<DoubleCoset> double_cosets(const PermGroup &g, const PermGroup &h, const PermGroup &k) {
  if (!h.is_subgroup_of(g) || !k.is_subgroup_of(g))
    throw Error(ErrorKind::NotSubgroup, "double cosets: H and K must be subgroups of G");
  std::vector<std::int64_t> hidx(h.order()), kidx(k.order());
  for (std::size_t i = 0; i < h.order(); ++i)
    hidx[i] = g.index_of(h.element(i));
  for (std::size_t i = 0; i < k.order(); ++i)
    kidx[i] = g.index_of(k.element(i));
  std::vector<bool> assigned(g.order(), false);
  std::vector<DoubleCoset> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (assigned[x])
      continue;
    DoubleCoset dc{g.element(x), {}};
    for (auto hi : hidx)
      for (auto ki : kidx) {
        auto y = g.mul(g.mul(static_cast<std::size_t>(hi), x), static_cast<std::size_t>(ki));
        if (!assigned[y]) {
          assigned[y] = true;
          dc.members.push_back(y);
        }
      }
    std::sort(dc.members.begin(), dc.members.end());
    out.push_back(std::move(dc));
  }
  return out;
}

std::vector<Permutation> coset_representatives(const PermGroup &g, const PermGroup &h, CosetSide side) {
  if (!h.is_subgroup_of(g))
    throw Error(ErrorKind::NotSubgroup, "coset representatives: H is not a subgroup of G");
  std::vector<bool> assigned(g.order(), false);
  std::vector<Permutation> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (assigned[x])
      continue;
    reps.push_back(g.element(x));
    for (const auto &e : h.elements()) {
      auto hi = static_cast<std::size_t>(g.index_of(e));
      assigned[side == CosetSide::Right ? g.mul(hi, x) : g.mul(x, hi)] = true;
    }
  }
  return reps;
}

GroupTower make_tower(PermGroup g, PermGroup h, PermGroup k) {
  if (h.degree() != g.degree() || k.degree() != g.degree())
    throw Error(ErrorKind::NotSubgroup, "G, H and K must act on the same degree");
  if (!h.is_subgroup_of(g))
    throw Error(ErrorKind::NotSubgroup, "H not contained in G");
  if (!k.is_subgroup_of(h))
    throw Error(ErrorKind::NotSubgroup, "K not contained in H");
  return GroupTower{std::move(g), std::move(h), std::move(k)};
}

bool check_group_depth3_condition(const GroupTower &t) {
  PermGroup closure = normal_closure(t.G, t.K);
  return std::all_of(closure.elements().begin(), closure.elements().end(),
                     [&](const Permutation &p) { return t.H.contains(p); });
}

} // namespace d3
