#include "gdes/smallgroup.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>

#include "gdes/cycling.hpp"
#include "gdes/error.hpp"

namespace gdes {

ExplicitPerm::ExplicitPerm(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v]) throw NotInvertible("image is not a bijection");
    seen[v] = true;
  }
}

ExplicitPerm ExplicitPerm::identity(std::size_t n) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  return ExplicitPerm(std::move(img));
}

bool ExplicitPerm::is_identity() const {
  for (std::size_t s = 0; s < image_.size(); ++s)
    if (image_[s] != s) return false;
  return true;
}

std::size_t ExplicitPerm::hash() const {
  std::uint64_t h = image_.size();
  for (auto v : image_) h = mix64(h ^ v);
  return static_cast<std::size_t>(h);
}

namespace {

ExplicitPerm materialize_with(const CipherSpec& spec, const Word& k, bool decrypt) {
  const std::uint64_t n = space_size_u64(spec.group(), spec.block_length());
  if (n > kMaterializeLimit)
    throw CapacityError("materialize: " + std::to_string(n) + " states exceed 2^24");
  spec.check_key(k);
  std::vector<std::uint32_t> img(n);
  for (std::uint64_t s = 0; s < n; ++s) {
    const Word m = u64_to_word(s, spec.group(), spec.block_length());
    img[s] = static_cast<std::uint32_t>(
        word_to_u64(decrypt ? gdes_decrypt(spec, k, m) : gdes_encrypt(spec, k, m)));
  }
  return ExplicitPerm(std::move(img));
}

}  // namespace

ExplicitPerm materialize(const CipherSpec& spec, const Word& k) {
  return materialize_with(spec, k, false);
}

ExplicitPerm materialize_decrypt(const CipherSpec& spec, const Word& k) {
  return materialize_with(spec, k, true);
}

ExplicitPerm perm_compose(const ExplicitPerm& p, const ExplicitPerm& q) {
  if (p.size() != q.size()) throw DimensionError("perm_compose: sizes differ");
  std::vector<std::uint32_t> img(p.size());
  for (std::size_t s = 0; s < img.size(); ++s) img[s] = p[q[s]];
  return ExplicitPerm(std::move(img));
}

ExplicitPerm perm_inverse(const ExplicitPerm& p) {
  std::vector<std::uint32_t> img(p.size());
  for (std::size_t s = 0; s < img.size(); ++s) img[p[s]] = static_cast<std::uint32_t>(s);
  return ExplicitPerm(std::move(img));
}

std::vector<std::uint64_t> cycle_lengths(const ExplicitPerm& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::uint64_t> out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    std::uint64_t len = 0;
    for (std::size_t x = s; !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

std::uint64_t cycle_length_of(const ExplicitPerm& p, std::uint32_t s) {
  std::uint64_t len = 1;
  for (std::uint32_t x = p[s]; x != s; x = p[x]) ++len;
  return len;
}

std::map<std::uint64_t, std::uint64_t> cycle_type(const ExplicitPerm& p) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (auto len : cycle_lengths(p)) ++out[len];
  return out;
}

int perm_sign(const ExplicitPerm& p) {
  return (p.size() - cycle_lengths(p).size()) % 2 == 0 ? 1 : -1;
}

StreamingSign streaming_sign(const CipherSpec& spec, const Word& k) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t n = space_size_u64(spec.group(), spec.block_length());
  if (n > (std::uint64_t{1} << 32))
    throw CapacityError("streaming_sign: " + std::to_string(n) + " states exceed 2^32");
  const Permutation perm(spec, {{k, false}});
  const FastCipher* eng = perm.engine();

  std::vector<std::uint64_t> visited((n + 63) / 64, 0);
  auto test_and_set = [&](std::uint64_t d) {
    const std::uint64_t bit = std::uint64_t{1} << (d & 63);
    const bool was = visited[d >> 6] & bit;
    visited[d >> 6] |= bit;
    return was;
  };

  StreamingSign r;
  r.states = n;
  for (std::uint64_t d = 0; d < n; ++d) {
    if (test_and_set(d)) continue;
    ++r.cycles;
    const std::uint64_t start = eng ? eng->from_dense(d) : d;
    for (std::uint64_t s = perm.step(start); s != start; s = perm.step(s))
      test_and_set(eng ? eng->dense(s) : s);
  }
  r.sign = (n - r.cycles) % 2 == 0 ? 1 : -1;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool PermSet::insert(ExplicitPerm p) {
  if (contains(p)) return false;
  index_.emplace(p.hash(), items_.size());
  items_.push_back(std::move(p));
  return true;
}

std::optional<std::size_t> PermSet::index_of(const ExplicitPerm& p) const {
  auto [lo, hi] = index_.equal_range(p.hash());
  for (auto it = lo; it != hi; ++it)
    if (items_[it->second] == p) return it->second;
  return std::nullopt;
}

std::vector<FunctionTable> injective_tables(const GroupSpec& group, std::size_t t) {
  const std::uint64_t n = space_size_u64(group, t);
  if (n > 8) throw CapacityError("injective_tables: |G|^t = " + std::to_string(n) + " > 8");
  std::vector<std::uint64_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<FunctionTable> out;
  do {
    out.emplace_back(group, t, img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

PermSet enumerate_feistel_set(const GroupSpec& group, std::size_t t,
                              const std::vector<FunctionTable>& X, std::size_t n,
                              bool include_swap, bool tie_ends) {
  const std::uint64_t h = space_size_u64(group, t);
  const std::uint64_t states = h * h;
  if (states > kMaterializeLimit) throw CapacityError("enumerate_feistel_set: domain too large");
  for (const auto& f : X)
    if (f.width() != t || !(f.group() == group))
      throw DimensionError("enumerate_feistel_set: table over the wrong domain");
  const std::size_t free_rounds = (tie_ends && n >= 2) ? n - 1 : n;
  double builds = 1;
  for (std::size_t r = 0; r < free_rounds; ++r) builds *= static_cast<double>(X.size());
  if (builds > static_cast<double>(kEnumerationLimit))
    throw CapacityError("enumerate_feistel_set: |X|^n exceeds 10^7");

  // Half-words as digit vectors, for nit-wise addition on indices.
  std::vector<std::vector<std::uint32_t>> digits(h);
  for (std::uint64_t y = 0; y < h; ++y) {
    const Word w = u64_to_word(y, group, t);
    digits[y].assign(w.nits().begin(), w.nits().end());
  }
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < t; ++i) r = r * group.order() + group.add_index(digits[a][i], digits[b][i]);
    return r;
  };
  std::vector<std::vector<std::uint64_t>> addt(h, std::vector<std::uint64_t>(h));
  for (std::uint64_t a = 0; a < h; ++a)
    for (std::uint64_t b = 0; b < h; ++b) addt[a][b] = add(a, b);

  PermSet out;
  if (X.empty() && n > 0) return out;
  std::vector<std::size_t> choice(n, 0);
  std::vector<std::uint32_t> img(states);
  while (true) {
    if (tie_ends && n >= 2) choice[n - 1] = choice[0];
    for (std::uint64_t s = 0; s < states; ++s) {
      std::uint64_t x = s / h, y = s % h;
      for (std::size_t r = 0; r < n; ++r) {
        const std::uint64_t ny = addt[x][X[choice[r]].at(y)];
        x = y;
        y = ny;
      }
      if (include_swap) std::swap(x, y);
      img[s] = static_cast<std::uint32_t>(x * h + y);
    }
    out.insert(ExplicitPerm(img));
    std::size_t r = 0;
    for (; r < free_rounds; ++r) {
      if (++choice[r] < X.size()) break;
      choice[r] = 0;
    }
    if (r == free_rounds) break;
  }
  return out;
}

ClosureResult closure_check(const PermSet& S) {
  ClosureResult res;
  for (std::size_t a = 0; a < S.size(); ++a)
    for (std::size_t b = 0; b < S.size(); ++b)
      if (!S.contains(perm_compose(S[a], S[b]))) {
        res.closed = false;
        res.witness = {a, b};
        return res;
      }
  return res;
}

PurityResult purity_check(const PermSet& S) {
  if (S.size() > 300) throw CapacityError("purity_check: |S| > 300");
  PurityResult res;
  std::vector<ExplicitPerm> inv;
  for (const auto& p : S.items()) inv.push_back(perm_inverse(p));
  for (std::size_t b = 0; b < S.size() && res.pure; ++b)
    for (std::size_t c = 0; c < S.size() && res.pure; ++c) {
      const ExplicitPerm q = perm_compose(inv[b], S[c]);
      for (std::size_t a = 0; a < S.size(); ++a)
        if (!S.contains(perm_compose(S[a], q))) {
          res.pure = false;
          res.witness = std::array<std::size_t, 3>{a, b, c};
          break;
        }
    }
  if (S.size() > 0) {
    PermSet shifted;
    for (const auto& p : S.items()) shifted.insert(perm_compose(inv[0], p));
    res.lemma_agrees = closure_check(shifted).closed == res.pure;
  }
  return res;
}

bool contains_identity(const PermSet& S) {
  return std::any_of(S.items().begin(), S.items().end(),
                     [](const ExplicitPerm& p) { return p.is_identity(); });
}

std::optional<std::uint64_t> generated_order(const PermSet& S, std::uint64_t cap) {
  if (S.size() == 0) return 1;
  PermSet group;
  group.insert(ExplicitPerm::identity(S[0].size()));
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const ExplicitPerm cur = group[frontier.front()];
    frontier.pop_front();
    for (const auto& g : S.items()) {
      if (group.insert(perm_compose(g, cur))) {
        if (group.size() > cap) return std::nullopt;
        frontier.push_back(group.size() - 1);
      }
    }
  }
  return group.size();
}

}  // namespace gdes
