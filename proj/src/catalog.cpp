#include "d3/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <thread>

#include "d3/depth.hpp"
#include "d3/error.hpp"

namespace d3 {

namespace {

using Members = std::vector<std::uint32_t>;

Permutation from_images(std::vector<std::uint32_t> images) { return Permutation(std::move(images)); }

Permutation cycle(std::size_t n) {
  std::vector<std::uint32_t> im(n);
  for (std::size_t i = 0; i < n; ++i)
    im[i] = static_cast<std::uint32_t>((i + 1) % n);
  return from_images(im);
}

/// a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1, acting on itself by left
/// multiplication; a^k b^e has index k + 2m e.
PermGroup dicyclic(std::size_t m, std::size_t cap) {
  const std::size_t n = 2 * m, deg = 2 * n;
  auto mul = [&](std::size_t x, std::size_t y) {
    std::size_t k1 = x % n, e1 = x / n, k2 = y % n, e2 = y / n;
    if (e1 == 0)
      return (k1 + k2) % n + n * e2;
    std::size_t k = (k1 + n - k2) % n;
    return e2 ? (k + m) % n : k + n;
  };
  std::vector<std::uint32_t> a(deg), b(deg);
  for (std::size_t y = 0; y < deg; ++y) {
    a[y] = static_cast<std::uint32_t>(mul(1, y));
    b[y] = static_cast<std::uint32_t>(mul(n, y));
  }
  return generate(deg, {from_images(a), from_images(b)}, cap);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

Members closure(const PermGroup &g, const Members &gens) {
  std::vector<char> in(g.order(), 0);
  Members out{0};
  in[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto s : gens) {
      auto y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Members join(const PermGroup &g, const Members &a, const Members &b) {
  Members gens = a;
  gens.insert(gens.end(), b.begin(), b.end());
  return closure(g, gens);
}

Members conjugate(const PermGroup &g, const Members &s, std::uint32_t x) {
  Members out;
  for (auto y : s)
    out.push_back(g.mul(g.mul(x, y), g.inv(x)));
  std::sort(out.begin(), out.end());
  return out;
}

bool subset(const Members &a, const Members &b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

/// Greedy generators: members in index order that enlarge the closure.
PermGroup as_subgroup(const PermGroup &g, const Members &s) {
  Members gens, span{0};
  for (auto x : s)
    if (!std::binary_search(span.begin(), span.end(), x)) {
      gens.push_back(x);
      span = closure(g, gens);
    }
  std::vector<Permutation> perms;
  for (auto x : gens)
    perms.push_back(g.element(x));
  return subgroup(g, perms);
}

std::vector<Members> subgroup_members(const PermGroup &g) {
  std::set<Members> seen;
  std::vector<Members> cyclic;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    Members c = closure(g, {x});
    if (seen.insert(c).second)
      cyclic.push_back(c);
  }
  std::vector<Members> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Members> next;
    for (const auto &s : frontier)
      for (const auto &c : cyclic) {
        if (subset(c, s))
          continue;
        Members j = join(g, s, c);
        if (seen.insert(j).second)
          next.push_back(j);
      }
    frontier = std::move(next);
  }
  std::vector<Members> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Members &a, const Members &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

} // namespace

std::vector<NamedGroup> group_catalog(std::size_t max_order, std::size_t cap) {
  if (max_order > cap)
    throw Error(ErrorKind::CapExceeded, "max order " + std::to_string(max_order) + " exceeds the cap " +
                                            std::to_string(cap));
  std::vector<NamedGroup> out;
  for (std::size_t n = 2; n <= max_order; ++n)
    out.push_back({"C" + std::to_string(n), generate(n, {cycle(n)}, cap)});
  if (4 <= max_order)
    out.push_back({"D2", generate(4, {Permutation::parse("(0 1)(2 3)", 4), Permutation::parse("(0 2)(1 3)", 4)}, cap)});
  for (std::size_t n = 4; 2 * n <= max_order; ++n) {
    std::vector<std::uint32_t> refl(n);
    for (std::size_t i = 0; i < n; ++i)
      refl[i] = static_cast<std::uint32_t>((n - i) % n);
    out.push_back({"D" + std::to_string(n), generate(n, {cycle(n), from_images(refl)}, cap)});
  }
  for (std::size_t n = 3; factorial(n) <= max_order; ++n)
    out.push_back({"S" + std::to_string(n), generate(n, {cycle(n), Permutation::parse("(0 1)", n)}, cap)});
  for (std::size_t n = 4; factorial(n) / 2 <= max_order; ++n) {
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      std::vector<std::uint32_t> im(n);
      std::iota(im.begin(), im.end(), 0);
      im[i] = static_cast<std::uint32_t>(i + 1);
      im[i + 1] = static_cast<std::uint32_t>(i + 2);
      im[i + 2] = static_cast<std::uint32_t>(i);
      gens.push_back(from_images(im));
    }
    out.push_back({"A" + std::to_string(n), generate(n, gens, cap)});
  }
  if (8 <= max_order)
    out.push_back({"Q8", dicyclic(2, cap)});
  if (16 <= max_order)
    out.push_back({"Q16", dicyclic(4, cap)});
  std::stable_sort(out.begin(), out.end(), [](const NamedGroup &a, const NamedGroup &b) {
    if (a.group.order() != b.group.order())
      return a.group.order() < b.group.order();
    return a.name < b.name;
  });
  return out;
}

std::vector<PermGroup> all_subgroups(const PermGroup &g) {
  std::vector<PermGroup> out;
  for (const auto &m : subgroup_members(g))
    out.push_back(as_subgroup(g, m));
  return out;
}

std::vector<GroupTower> subgroup_towers(const PermGroup &g) {
  auto subs = subgroup_members(g);
  std::set<std::pair<Members, Members>> reps;
  std::vector<GroupTower> out;
  for (const auto &h : subs)
    for (const auto &k : subs) {
      if (!subset(k, h))
        continue;
      std::pair<Members, Members> key{h, k};
      for (std::uint32_t x = 1; x < g.order(); ++x)
        key = std::min(key, std::pair<Members, Members>{conjugate(g, h, x), conjugate(g, k, x)});
      if (reps.insert(key).second)
        out.push_back(make_tower(g, as_subgroup(g, key.first), as_subgroup(g, key.second)));
    }
  return out;
}

std::vector<std::string> generator_strings(const PermGroup &g) {
  std::vector<std::string> out;
  for (const auto &p : g.generators())
    out.push_back(p.to_string());
  return out;
}

ScanResult scan_catalog(std::size_t max_order, const Field &f, std::size_t cap, unsigned threads) {
  ScanResult res;
  res.field = f.name();
  res.max_order = max_order;
  struct Job {
    std::string group;
    GroupTower tower;
  };
  std::vector<Job> jobs;
  for (const auto &ng : group_catalog(max_order, cap))
    for (auto &t : subgroup_towers(ng.group))
      jobs.push_back({ng.name, std::move(t)});

  res.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(jobs.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const GroupTower &t = jobs[i].tower;
      ScanRow &r = res.rows[i];
      r.group = jobs[i].group;
      r.order = t.G.order();
      r.H = generator_strings(t.H);
      r.K = generator_strings(t.K);
      r.h_order = t.H.order();
      r.k_order = t.K.order();
      r.condition = check_group_depth3_condition(t);
      r.b_equals_c = t.H == t.K;
      r.h_normal = t.H.is_normal_in(t.G);
      try {
        TowerModules m = tower_modules(tower_from_groups(t, f));
        r.rd3 = is_rD3(m).verdict;
        r.ld3 = is_lD3(m).verdict;
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k)
    pool.emplace_back(worker);
  for (auto &th : pool)
    th.join();
  for (const auto &e : errors)
    if (!e.empty())
      throw Error(ErrorKind::VerificationFailed, "scan failed: " + e);

  for (auto &r : res.rows) {
    bool modular = f.characteristic() != 0 && r.order % f.characteristic() == 0;
    if (r.condition && !(r.rd3 && r.ld3)) {
      r.status = "violation";
      ++res.violations;
    } else if (r.b_equals_c && (r.rd3 != r.h_normal || r.ld3 != r.h_normal)) {
      if (modular) {
        r.status = "modular";
      } else {
        r.status = "mismatch";
        ++res.mismatches;
      }
    } else if ((r.rd3 || r.ld3) && !r.condition) {
      r.status = "candidate";
      ++res.candidates;
    } else {
      r.status = "ok";
    }
  }
  return res;
}

} // namespace d3
