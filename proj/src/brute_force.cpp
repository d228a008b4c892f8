#include <cmath>
#include <unordered_set>

#include "arstab/rank_bounds.hpp"

namespace arstab {

namespace {

// Tensors small enough for brute force are packed into one integer, base q.
struct Packer {
  std::uint64_t q;
  std::size_t size;

  std::uint64_t pack(std::span<const std::uint64_t> codes) const {
    std::uint64_t key = 0;
    for (std::size_t i = codes.size(); i-- > 0;) key = key * q + codes[i];
    return key;
  }
  void unpack(std::uint64_t key, std::vector<std::uint64_t>& out) const {
    out.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      out[i] = key % q;
      key /= q;
    }
  }
};

std::vector<std::vector<std::uint64_t>> all_vectors(std::uint64_t q, std::size_t n, bool nonzero, bool normalized) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> x(n, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) break;
    if (normalized) {
      std::size_t first = 0;
      while (first < n && x[first] == 0) ++first;
      if (x[first] != 1) continue;
    }
    out.push_back(x);
  }
  if (!nonzero) out.insert(out.begin(), std::vector<std::uint64_t>(n, 0));
  return out;
}

}  // namespace

BruteForceRank brute_force_rank(const Tensor& t, std::size_t r_max) {
  const Field& f = t.field();
  const std::uint64_t q = f.order();
  if (std::pow(static_cast<double>(q), static_cast<double>(t.size())) >= 1.8e19) {
    throw Error(ErrorKind::SizeGuard, "tensor space too large for brute-force rank");
  }
  const Packer packer{q, t.size()};
  const std::uint64_t target = packer.pack(t.codes());
  if (target == 0) return {0, r_max};
  const std::size_t lower = flattening_bound(t);
  if (lower > r_max) return {std::nullopt, r_max};

  // Distinct nonzero rank-one tensors; the first leg is normalized to have
  // leading coordinate 1 and scalars live in the remaining legs.
  double count = 1;
  for (std::size_t j = 0; j < t.order(); ++j) count *= std::pow(static_cast<double>(q), t.dim(j));
  if (count > kWorkGuard) throw Error(ErrorKind::SizeGuard, "too many rank-one candidates");
  std::unordered_set<std::uint64_t> ones_set;
  {
    std::vector<std::vector<std::vector<std::uint64_t>>> legs;
    for (std::size_t j = 0; j < t.order(); ++j) legs.push_back(all_vectors(q, t.dim(j), true, j == 0));
    std::vector<std::size_t> pick(t.order(), 0);
    for (;;) {
      std::vector<std::uint64_t> outer{1};
      for (std::size_t j = 0; j < t.order(); ++j) {
        std::vector<std::uint64_t> next;
        for (auto a : outer)
          for (auto b : legs[j][pick[j]]) next.push_back(f.mul(a, b));
        outer = std::move(next);
      }
      ones_set.insert(packer.pack(outer));
      std::size_t pos = t.order();
      while (pos > 0 && ++pick[pos - 1] == legs[pos - 1].size()) pick[--pos] = 0;
      if (pos == 0) break;
    }
  }
  const std::vector<std::uint64_t> ones(ones_set.begin(), ones_set.end());
  std::vector<std::vector<std::uint64_t>> ones_codes(ones.size());
  for (std::size_t i = 0; i < ones.size(); ++i) packer.unpack(ones[i], ones_codes[i]);

  // level = every tensor of rank <= k.
  std::unordered_set<std::uint64_t> level{0};
  std::vector<std::uint64_t> a, sum(t.size());
  for (std::size_t k = 1; k <= r_max; ++k) {
    if (static_cast<double>(level.size()) * static_cast<double>(ones.size()) * t.size() > kWorkGuard * 10) {
      throw Error(ErrorKind::SizeGuard, "brute-force rank search exceeds guard");
    }
    std::unordered_set<std::uint64_t> next = level;
    for (auto key : level) {
      packer.unpack(key, a);
      for (const auto& o : ones_codes) {
        for (std::size_t i = 0; i < a.size(); ++i) sum[i] = f.add(a[i], o[i]);
        next.insert(packer.pack(sum));
      }
    }
    level = std::move(next);
    if (k >= lower && level.count(target)) return {k, r_max};
  }
  return {std::nullopt, r_max};
}

BruteForceSubrank brute_force_subrank(const Tensor& t, std::size_t r_max) {
  const Field& f = t.field();
  const std::uint64_t q = f.order();
  const std::size_t d = t.order();
  BruteForceSubrank best;
  std::size_t cap = r_max;
  for (std::size_t j = 0; j < d; ++j) cap = std::min(cap, flattening_rank(t, j));

  for (std::size_t r = 1; r <= cap; ++r) {
    // Guard: all maps on the first d-1 legs, then per-column search on the last.
    double work = 1;
    for (std::size_t j = 0; j + 1 < d; ++j) work *= std::pow(static_cast<double>(q), static_cast<double>(t.dim(j) * r));
    work *= static_cast<double>(r) * std::pow(static_cast<double>(q), static_cast<double>(t.dim(d - 1)));
    if (work > kWorkGuard) throw Error(ErrorKind::SizeGuard, "brute-force subrank search exceeds guard");

    const Tensor unit = diagonal(r, d, f);
    const auto last_candidates = all_vectors(q, t.dim(d - 1), false, false);
    std::vector<std::vector<std::vector<std::uint64_t>>> leg_maps;
    for (std::size_t j = 0; j + 1 < d; ++j) leg_maps.push_back(all_vectors(q, t.dim(j) * r, false, false));

    bool found = false;
    std::vector<std::size_t> pick(d - 1, 0);
    while (!found) {
      std::vector<LinearMap> maps;
      for (std::size_t j = 0; j + 1 < d; ++j) maps.emplace_back(f, t.dim(j), r, leg_maps[j][pick[j]]);
      maps.push_back(LinearMap::identity(f, t.dim(d - 1)));
      const Tensor partial = restrict(t, maps);  // dims (r, ..., r, n_d)
      // Each output column c must satisfy partial . col = unit[..., c].
      const std::size_t rows = partial.size() / t.dim(d - 1);
      const std::size_t nd = t.dim(d - 1);
      LinearMap last(f, nd, r);
      bool ok = true;
      for (std::size_t c = 0; c < r && ok; ++c) {
        bool col_ok = false;
        for (const auto& cand : last_candidates) {
          bool match = true;
          for (std::size_t row = 0; row < rows && match; ++row) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < nd; ++k) acc = f.add(acc, f.mul(partial.codes()[row * nd + k], cand[k]));
            match = acc == unit.codes()[row * r + c];
          }
          if (match) {
            for (std::size_t k = 0; k < nd; ++k) last.set_code(k, c, cand[k]);
            col_ok = true;
            break;
          }
        }
        ok = col_ok;
      }
      if (ok) {
        maps.back() = last;
        if (!(restrict(t, maps) == unit)) throw Error(ErrorKind::CertificateInvalid, "subrank witness failed");
        best.subrank = r;
        best.witness = std::move(maps);
        found = true;
        break;
      }
      std::size_t pos = d - 1;
      while (pos > 0 && ++pick[pos - 1] == leg_maps[pos - 1].size()) pick[--pos] = 0;
      if (pos == 0) break;
    }
    if (!found) break;
  }
  return best;
}

}  // namespace arstab
