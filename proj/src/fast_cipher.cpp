#include "gdes/fast_cipher.hpp"

#include "gdes/error.hpp"

namespace gdes {

namespace {

struct Layout {
  unsigned c = 0, b = 0, chunks = 0;
};

unsigned bits_for(std::uint64_t count) {
  unsigned b = 0;
  while ((std::uint64_t{1} << b) < count) ++b;
  return b;
}

std::optional<Layout> choose_layout(std::uint32_t q, std::size_t t) {
  std::optional<Layout> best;
  std::uint64_t span = 1;
  for (unsigned c = 1; c <= t; ++c) {
    span *= q;
    const unsigned b = bits_for(span);
    if (b > 10) break;
    const unsigned chunks = static_cast<unsigned>((t + c - 1) / c);
    if (b * chunks > 24) continue;
    if (!best || b * chunks <= best->b * best->chunks) best = Layout{c, b, chunks};
  }
  return best;
}

}  // namespace

bool FastCipher::supports(const CipherSpec& spec) {
  return choose_layout(spec.group().order(), spec.half_width()).has_value();
}

FastCipher::FastCipher(const CipherSpec& spec)
    : spec_(&spec),
      q_(spec.group().order()),
      t_(spec.half_width()),
      swap_(spec.final_swap()) {
  const auto layout = choose_layout(q_, t_);
  if (!layout) throw CapacityError("no packed layout for " + spec.group().to_string() + "^" +
                                   std::to_string(t_) + " within 24 bits");
  c_ = layout->c;
  b_ = layout->b;
  chunks_ = layout->chunks;
  mask_ = (1u << b_) - 1;
  half_count_ = space_size_u64(spec.group(), t_);

  // Chunk tables: value v holds c nits base q, most significant nit first.
  std::uint32_t span = 1;
  for (unsigned i = 0; i < c_; ++i) span *= q_;
  add_.assign(std::size_t{1} << (2 * b_), 0);
  sub_.assign(add_.size(), 0);
  const GroupSpec& g = spec.group();
  std::vector<std::uint32_t> da(c_), db(c_);
  for (std::uint32_t a = 0; a < span; ++a) {
    for (std::uint32_t b = 0; b < span; ++b) {
      std::uint32_t x = a, y = b;
      for (unsigned i = c_; i-- > 0;) {
        da[i] = x % q_;
        db[i] = y % q_;
        x /= q_;
        y /= q_;
      }
      std::uint32_t s = 0, d = 0;
      for (unsigned i = 0; i < c_; ++i) {
        s = s * q_ + g.add_index(da[i], db[i]);
        d = d * q_ + g.sub_index(da[i], db[i]);
      }
      add_[(a << b_) | b] = static_cast<std::uint16_t>(s);
      sub_[(a << b_) | b] = static_cast<std::uint16_t>(d);
    }
  }

  half_to_dense_.assign(std::size_t{1} << (b_ * chunks_), 0);
  dense_to_half_.resize(half_count_);
  std::vector<std::uint32_t> nits(t_);
  for (std::uint64_t d = 0; d < half_count_; ++d) {
    std::uint64_t x = d;
    for (std::size_t i = t_; i-- > 0;) {
      nits[i] = static_cast<std::uint32_t>(x % q_);
      x /= q_;
    }
    const std::uint32_t h = pack(nits);
    dense_to_half_[d] = h;
    half_to_dense_[h] = static_cast<std::uint32_t>(d);
  }
}

// Chunk 0 holds nits [0, c), the leftmost; a short last chunk has zero high nits.
std::uint32_t FastCipher::pack(std::span<const std::uint32_t> nits) const {
  std::uint32_t h = 0;
  for (unsigned ch = 0; ch < chunks_; ++ch) {
    std::uint32_t v = 0;
    for (std::size_t i = ch * c_; i < std::min<std::size_t>(t_, (ch + 1) * c_); ++i)
      v = v * q_ + nits[i];
    h |= v << (ch * b_);
  }
  return h;
}

void FastCipher::unpack(std::uint32_t h, std::uint32_t* nits) const {
  for (unsigned ch = 0; ch < chunks_; ++ch) {
    std::uint32_t v = (h >> (ch * b_)) & mask_;
    const std::size_t lo = ch * c_, hi = std::min<std::size_t>(t_, (ch + 1) * c_);
    for (std::size_t i = hi; i-- > lo;) {
      nits[i] = v % q_;
      v /= q_;
    }
  }
}

FastCipher::Key FastCipher::compile(const Word& key) const {
  const auto rounds = spec_->keyed_rounds(key);
  Key k;
  std::vector<std::uint32_t> nits(t_);
  for (const auto& r : rounds) {
    std::vector<std::uint32_t> f(half_to_dense_.size(), 0);
    for (std::uint64_t d = 0; d < half_count_; ++d) {
      const std::uint32_t h = dense_to_half_[d];
      const Word out = r.f.evaluate(u64_to_word(d, spec_->group(), t_), r.subkey);
      f[h] = pack(out.nits());
    }
    k.f.push_back(std::move(f));
  }
  return k;
}

std::uint64_t FastCipher::enter(const Word& m) const {
  spec_->check_block(m);
  const Word inner = wiremap_apply(spec_->initial_perm(), m);
  const auto n = inner.nits();
  return (std::uint64_t{pack(n.subspan(0, t_))} << 32) | pack(n.subspan(t_));
}

Word FastCipher::leave(std::uint64_t s) const {
  std::vector<std::uint32_t> nits(2 * t_);
  unpack(static_cast<std::uint32_t>(s >> 32), nits.data());
  unpack(static_cast<std::uint32_t>(s), nits.data() + t_);
  return wiremap_apply(spec_->final_perm(), Word(spec_->group(), std::move(nits)));
}

}  // namespace gdes
