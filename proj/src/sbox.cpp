#include "gdes/sbox.hpp"

#include <algorithm>
#include <numeric>

#include "gdes/error.hpp"
#include "gdes/rng.hpp"

namespace gdes {

namespace {

std::uint64_t digits_value(std::span<const std::uint32_t> digits, std::uint64_t base) {
  std::uint64_t v = 0;
  for (auto d : digits) v = v * base + d;
  return v;
}

std::vector<std::uint32_t> value_digits(std::uint64_t v, std::uint64_t base, std::size_t n) {
  std::vector<std::uint32_t> d(n);
  for (std::size_t i = n; i-- > 0;) {
    d[i] = static_cast<std::uint32_t>(v % base);
    v /= base;
  }
  return d;
}

}  // namespace

SBox::SBox(GroupSpec group, std::size_t row_width, std::size_t col_width,
           std::vector<std::uint32_t> entries)
    : group_(std::move(group)),
      row_width_(row_width),
      col_width_(col_width),
      entries_(std::move(entries)) {
  if (row_width_ == 0 || col_width_ == 0)
    throw DimensionError("S-box row and column widths must be positive");
  rows_ = space_size_u64(group_, row_width_);
  columns_ = space_size_u64(group_, col_width_);
  if (rows_ * columns_ > (1ull << 28)) throw CapacityError("S-box has more than 2^28 cells");
  if (entries_.size() != rows_ * columns_)
    throw DimensionError("S-box needs " + std::to_string(rows_) + "x" + std::to_string(columns_) +
                         " entries, got " + std::to_string(entries_.size()));
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (entries_[k] >= columns_)
      throw RangeError("S-box entry " + std::to_string(entries_[k]) + " at row " +
                       std::to_string(k / columns_) + ", column " + std::to_string(k % columns_) +
                       " is not below " + std::to_string(columns_));
}

SBoxSelection sbox_select(const SBox& box, const Word& block) {
  if (block.length() != box.block_width())
    throw DimensionError("S-box input must have " + std::to_string(box.block_width()) +
                         " nits, got " + std::to_string(block.length()));
  if (!(block.group() == box.group())) throw DimensionError("S-box input over a different group");
  const std::size_t i = box.row_width();
  const std::size_t j = box.col_width();
  const std::size_t head = (i + 1) / 2;
  const std::size_t tail = i / 2;
  const auto nits = block.nits();
  const std::uint64_t base = box.group().order();

  std::vector<std::uint32_t> row_digits(nits.begin(), nits.begin() + head);
  row_digits.insert(row_digits.end(), nits.end() - tail, nits.end());

  SBoxSelection sel;
  sel.row = digits_value(row_digits, base);
  sel.column = digits_value(nits.subspan(head, j), base);
  sel.entry = box.entry(sel.row, sel.column);
  sel.output = u64_to_word(sel.entry, box.group(), j);
  return sel;
}

Word sbox_lookup(const SBox& box, const Word& block) { return sbox_select(box, block).output; }

SBoxRoundSpec::SBoxRoundSpec(std::vector<SBox> boxes, WireMap expansion)
    : boxes_(std::move(boxes)), expansion_(std::move(expansion)) {
  if (boxes_.empty()) throw DimensionError("an S-box round function needs at least one box");
  const SBox& first = boxes_.front();
  for (const auto& b : boxes_) {
    if (!(b.group() == first.group())) throw DimensionError("S-boxes over different groups");
    if (b.row_width() != first.row_width() || b.col_width() != first.col_width())
      throw DimensionError("S-boxes must share the same (i, j) shape");
  }
  const std::size_t n = boxes_.size();
  if (expansion_.in_length() != first.col_width() * n)
    throw DimensionError("half width t = " + std::to_string(expansion_.in_length()) +
                         " must equal j * n_boxes = " + std::to_string(first.col_width() * n));
  if (expansion_.out_length() != first.block_width() * n)
    throw DimensionError("expansion must produce (i + j) * n_boxes = " +
                         std::to_string(first.block_width() * n) + " nits, got " +
                         std::to_string(expansion_.out_length()));
}

RoundFunctionTrace round_function_trace(const SBoxRoundSpec& spec, const Word& right,
                                        const Word& subkey) {
  if (right.length() != spec.half_width())
    throw DimensionError("round function input must have " + std::to_string(spec.half_width()) +
                         " nits");
  if (subkey.length() != spec.subkey_length())
    throw DimensionError("subkey must have " + std::to_string(spec.subkey_length()) + " nits");
  RoundFunctionTrace tr;
  tr.expanded = wiremap_apply(spec.expansion(), right);
  tr.mixed = word_add(subkey, tr.expanded);
  const std::size_t w = spec.boxes().front().block_width();
  const auto mixed = tr.mixed.nits();
  std::vector<std::uint32_t> out;
  out.reserve(spec.half_width());
  for (std::size_t s = 0; s < spec.boxes().size(); ++s) {
    Word block(tr.mixed.group(), {mixed.begin() + s * w, mixed.begin() + (s + 1) * w});
    SBoxSelection sel = sbox_select(spec.boxes()[s], block);
    out.insert(out.end(), sel.output.nits().begin(), sel.output.nits().end());
    tr.blocks.push_back(std::move(block));
    tr.selections.push_back(std::move(sel));
  }
  tr.output = Word(tr.mixed.group(), std::move(out));
  return tr;
}

Word round_function_f(const SBoxRoundSpec& spec, const Word& right, const Word& subkey) {
  if (right.length() != spec.half_width())
    throw DimensionError("round function input must have " + std::to_string(spec.half_width()) +
                         " nits");
  if (subkey.length() != spec.subkey_length())
    throw DimensionError("subkey must have " + std::to_string(spec.subkey_length()) + " nits");
  const GroupSpec& g = spec.group();
  const auto table = spec.expansion().table();
  const std::size_t w = spec.boxes().front().block_width();
  const std::size_t i = spec.boxes().front().row_width();
  const std::size_t j = spec.boxes().front().col_width();
  const std::size_t head = (i + 1) / 2;
  const std::size_t tail = i / 2;
  const std::uint64_t base = g.order();

  std::vector<std::uint32_t> mixed(table.size());
  for (std::size_t p = 0; p < table.size(); ++p)
    mixed[p] = g.add_index(subkey[p], right[table[p] - 1]);

  std::vector<std::uint32_t> out(spec.half_width());
  for (std::size_t s = 0; s < spec.boxes().size(); ++s) {
    const std::uint32_t* block = mixed.data() + s * w;
    std::uint64_t row = 0;
    for (std::size_t k = 0; k < head; ++k) row = row * base + block[k];
    for (std::size_t k = w - tail; k < w; ++k) row = row * base + block[k];
    std::uint64_t col = 0;
    for (std::size_t k = head; k < head + j; ++k) col = col * base + block[k];
    std::uint64_t entry = spec.boxes()[s].entry(row, col);
    for (std::size_t k = j; k-- > 0;) {
      out[s * j + k] = static_cast<std::uint32_t>(entry % base);
      entry /= base;
    }
  }
  return Word(g, std::move(out));
}

SBox sbox_generate(const GroupSpec& group, std::size_t row_width, std::size_t col_width,
                   std::uint64_t seed, bool enforce_row_surjective) {
  const std::uint64_t rows = space_size_u64(group, row_width);
  const std::uint64_t cols = space_size_u64(group, col_width);
  Rng rng(seed);
  std::vector<std::uint32_t> entries;
  entries.reserve(rows * cols);
  std::vector<std::uint32_t> row(cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (enforce_row_surjective) {
      std::iota(row.begin(), row.end(), 0u);
      rng.shuffle(row);
    } else {
      for (auto& e : row) e = static_cast<std::uint32_t>(rng.below(cols));
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return SBox(group, row_width, col_width, std::move(entries));
}

bool SBoxAudit::rows_surjective() const {
  return std::all_of(rows.begin(), rows.end(), [](const RowAudit& r) { return r.surjective; });
}

SBoxAudit sbox_audit(const SBox& box) {
  const GroupSpec& g = box.group();
  const std::size_t in_w = box.block_width();
  const std::size_t out_w = box.col_width();
  const std::uint64_t base = g.order();
  const std::uint64_t domain = space_size_u64(g, in_w);
  if (domain > 1'000'000) throw CapacityError("S-box domain exceeds 10^6 inputs");

  // L(x) = F(x) - F(0), kept as output digit vectors.
  const std::vector<std::uint32_t> f0 = value_digits(
      sbox_select(box, Word::zeros(g, in_w)).entry, base, out_w);
  std::vector<std::vector<std::uint32_t>> lin(domain);
  for (std::uint64_t x = 0; x < domain; ++x) {
    auto fx = value_digits(sbox_select(box, u64_to_word(x, g, in_w)).entry, base, out_w);
    for (std::size_t k = 0; k < out_w; ++k) fx[k] = g.sub_index(fx[k], f0[k]);
    lin[x] = std::move(fx);
  }

  // Homomorphism check against the generators e_f placed at each input position;
  // agreement on generators for every x is equivalent to agreement on all pairs.
  SBoxAudit audit;
  audit.affine = true;
  std::vector<std::uint32_t> factor_gens;
  for (std::size_t f = 0; f < g.moduli().size(); ++f) {
    GroupElem e = g.identity();
    e.residues[f] = 1;
    factor_gens.push_back(g.index_of(e));
  }
  std::vector<std::uint64_t> weight(in_w);
  for (std::size_t p = in_w, w = 1; p-- > 0; w *= base) weight[p] = w;

  for (std::uint64_t x = 0; x < domain && audit.affine; ++x) {
    for (std::size_t p = 0; p < in_w && audit.affine; ++p) {
      const auto digit = static_cast<std::uint32_t>((x / weight[p]) % base);
      for (auto e : factor_gens) {
        const std::uint64_t gen = e * weight[p];
        const std::uint64_t sum = x - digit * weight[p] + g.add_index(digit, e) * weight[p];
        bool ok = true;
        for (std::size_t k = 0; k < out_w; ++k)
          if (lin[sum][k] != g.add_index(lin[x][k], lin[gen][k])) ok = false;
        if (!ok) {
          audit.affine = false;
          audit.affine_witness = std::make_pair(x, gen);
          break;
        }
      }
    }
  }

  std::vector<std::uint32_t> count(box.columns());
  for (std::uint64_t r = 0; r < box.rows(); ++r) {
    std::fill(count.begin(), count.end(), 0u);
    for (auto v : box.row(r)) ++count[v];
    RowAudit ra;
    ra.row = r;
    for (std::uint32_t v = 0; v < count.size(); ++v) {
      if (count[v] == 0) ra.missing.push_back(v);
      if (count[v] > 1) ra.duplicated.push_back(v);
    }
    ra.surjective = ra.missing.empty();
    audit.rows.push_back(std::move(ra));
  }
  return audit;
}

GroupEmbedding::GroupEmbedding(GroupSpec from, GroupSpec to, std::vector<std::uint32_t> image)
    : from_(std::move(from)), to_(std::move(to)), image_(std::move(image)) {
  if (image_.size() != from_.order())
    throw Error("embedding must list an image for each of the " + std::to_string(from_.order()) +
                " elements");
  if (to_.order() <= from_.order()) throw Error("embedding target must be strictly larger");
  inverse_.assign(to_.order(), -1);
  for (std::uint32_t a = 0; a < image_.size(); ++a) {
    if (image_[a] >= to_.order()) throw Error("embedding image outside the target group");
    if (inverse_[image_[a]] != -1) throw Error("embedding is not injective");
    inverse_[image_[a]] = a;
  }
  for (std::uint32_t a = 0; a < from_.order(); ++a)
    for (std::uint32_t b = 0; b < from_.order(); ++b)
      if (image_[from_.add_index(a, b)] != to_.add_index(image_[a], image_[b]))
        throw Error("embedding is not a homomorphism at (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
}

GroupEmbedding GroupEmbedding::scaling(std::uint32_t from_order, std::uint32_t to_order,
                                       std::uint32_t multiplier) {
  std::vector<std::uint32_t> image(from_order);
  for (std::uint32_t x = 0; x < from_order; ++x)
    image[x] = static_cast<std::uint32_t>((std::uint64_t{x} * multiplier) % to_order);
  return GroupEmbedding(GroupSpec::cyclic(from_order), GroupSpec::cyclic(to_order),
                        std::move(image));
}

std::optional<std::uint32_t> GroupEmbedding::preimage(std::uint32_t h) const {
  if (h >= inverse_.size() || inverse_[h] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(inverse_[h]);
}

Word GroupEmbedding::map(const Word& w) const {
  if (!(w.group() == from_)) throw DimensionError("word is not over the embedding's source group");
  std::vector<std::uint32_t> out(w.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = image_[w[i]];
  return Word(to_, std::move(out));
}

bool GroupEmbedding::in_image(const Word& w) const {
  if (!(w.group() == to_)) return false;
  return std::all_of(w.nits().begin(), w.nits().end(),
                     [&](std::uint32_t h) { return preimage(h).has_value(); });
}

SBox sbox_expand(const SBox& box, const GroupEmbedding& embedding) {
  if (!(box.group() == embedding.from()))
    throw DimensionError("S-box group does not match the embedding source");
  const GroupSpec& h = embedding.to();
  const std::size_t i = box.row_width();
  const std::size_t j = box.col_width();
  const std::uint64_t hb = h.order();
  const std::uint64_t gb = box.group().order();
  const std::uint64_t rows = space_size_u64(h, i);
  const std::uint64_t cols = space_size_u64(h, j);

  // Maps an H index (as digits) back to the G index, or nothing if any digit is new.
  auto restrict_index = [&](std::uint64_t v, std::size_t width) -> std::optional<std::uint64_t> {
    std::uint64_t out = 0;
    for (auto d : value_digits(v, hb, width)) {
      auto pre = embedding.preimage(d);
      if (!pre) return std::nullopt;
      out = out * gb + *pre;
    }
    return out;
  };
  auto embed_value = [&](std::uint64_t v) {
    std::uint64_t out = 0;
    for (auto d : value_digits(v, gb, j)) out = out * hb + embedding.map(d);
    return out;
  };

  std::uint64_t fill = 0;
  while (restrict_index(fill, j)) ++fill;

  std::vector<std::uint64_t> col_map(cols);
  std::vector<bool> col_in(cols);
  for (std::uint64_t c = 0; c < cols; ++c) {
    auto r = restrict_index(c, j);
    col_in[c] = r.has_value();
    col_map[c] = r.value_or(0);
  }

  std::vector<std::uint32_t> entries(rows * cols, static_cast<std::uint32_t>(fill));
  for (std::uint64_t r = 0; r < rows; ++r) {
    auto gr = restrict_index(r, i);
    if (!gr) continue;
    for (std::uint64_t c = 0; c < cols; ++c)
      if (col_in[c])
        entries[r * cols + c] = static_cast<std::uint32_t>(embed_value(box.entry(*gr, col_map[c])));
  }
  return SBox(h, i, j, std::move(entries));
}

}  // namespace gdes
