#include "gdes/word.hpp"

#include <limits>

#include "gdes/error.hpp"

namespace gdes {

namespace {

bool uses_digit_text(const GroupSpec& g) { return g.is_cyclic() && g.order() <= 10; }

void require_compatible(const Word& a, const Word& b, const char* op) {
  if (!(a.group() == b.group()))
    throw DimensionError(std::string(op) + ": words over different groups");
  if (a.length() != b.length())
    throw DimensionError(std::string(op) + ": length " + std::to_string(a.length()) + " vs " +
                         std::to_string(b.length()));
}

std::uint32_t parse_residue(std::string_view text, std::uint32_t modulus, std::size_t pos) {
  if (text.empty()) throw ParseError("empty nit at position " + std::to_string(pos), pos);
  std::uint64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw ParseError("non-digit in nit at position " + std::to_string(pos), pos);
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
    if (v >= modulus) break;
  }
  if (v >= modulus)
    throw ParseError("nit at position " + std::to_string(pos) + " is out of range for modulus " +
                         std::to_string(modulus),
                     pos);
  return static_cast<std::uint32_t>(v);
}

}  // namespace

BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer", 0);
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw ParseError("bad digit in integer '" + text + "'", i + 1);
  return BigInt(text);
}

Word::Word(GroupSpec group, std::vector<std::uint32_t> nits)
    : group_(std::move(group)), nits_(std::move(nits)) {
  for (std::size_t i = 0; i < nits_.size(); ++i)
    if (nits_[i] >= group_.order())
      throw InvalidElement("nit " + std::to_string(i + 1) + " is not an element of " +
                           group_.to_string());
}

Word Word::zeros(const GroupSpec& group, std::size_t length) {
  return Word(group, std::vector<std::uint32_t>(length, 0));
}

Word Word::from_elems(const GroupSpec& group, std::span<const GroupElem> elems) {
  std::vector<std::uint32_t> nits;
  nits.reserve(elems.size());
  for (const auto& e : elems) nits.push_back(group.index_of(e));
  return Word(group, std::move(nits));
}

std::string Word::to_string() const {
  std::string out;
  if (uses_digit_text(group_)) {
    out.reserve(nits_.size());
    for (auto n : nits_) out.push_back(static_cast<char>('0' + n));
    return out;
  }
  for (std::size_t i = 0; i < nits_.size(); ++i) {
    if (i) out += ',';
    const GroupElem e = group_.element_at(nits_[i]);
    for (std::size_t f = 0; f < e.residues.size(); ++f) {
      if (f) out += ':';
      out += std::to_string(e.residues[f]);
    }
  }
  return out;
}

Word word_add(const Word& a, const Word& b) {
  require_compatible(a, b, "word_add");
  std::vector<std::uint32_t> out(a.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.group().add_index(a[i], b[i]);
  return Word(a.group(), std::move(out));
}

Word word_sub(const Word& a, const Word& b) {
  require_compatible(a, b, "word_sub");
  std::vector<std::uint32_t> out(a.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.group().sub_index(a[i], b[i]);
  return Word(a.group(), std::move(out));
}

Word word_neg(const Word& a) {
  std::vector<std::uint32_t> out(a.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.group().neg_index(a[i]);
  return Word(a.group(), std::move(out));
}

Word parse_word(std::string_view text, const GroupSpec& group, std::size_t length) {
  std::vector<std::uint32_t> nits;
  nits.reserve(length);
  if (uses_digit_text(group)) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c < '0' || c > '9')
        throw ParseError("non-digit at position " + std::to_string(i + 1), i + 1);
      const auto v = static_cast<std::uint32_t>(c - '0');
      if (v >= group.order())
        throw ParseError("digit " + std::string(1, c) + " at position " + std::to_string(i + 1) +
                             " is out of range for " + group.to_string(),
                         i + 1);
      nits.push_back(v);
    }
    if (nits.size() != length)
      throw ParseError("expected " + std::to_string(length) + " nits, got " +
                           std::to_string(nits.size()),
                       std::min(nits.size(), length) + 1);
    return Word(group, std::move(nits));
  }

  const auto moduli = group.moduli();
  std::size_t pos = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view nit_text = text.substr(start, end - start);
    if (pos > length)
      throw ParseError("expected " + std::to_string(length) + " nits, got more", pos);
    GroupElem e;
    std::size_t f_start = 0;
    for (std::size_t f = 0; f < moduli.size(); ++f) {
      std::size_t f_end = nit_text.find(':', f_start);
      const bool last = f + 1 == moduli.size();
      if (last) {
        if (f_end != std::string_view::npos)
          throw ParseError("too many residues in nit " + std::to_string(pos), pos);
        f_end = nit_text.size();
      } else if (f_end == std::string_view::npos) {
        throw ParseError("too few residues in nit " + std::to_string(pos), pos);
      }
      e.residues.push_back(parse_residue(nit_text.substr(f_start, f_end - f_start), moduli[f], pos));
      f_start = f_end + 1;
    }
    nits.push_back(group.index_of(e));
    ++pos;
    start = end + 1;
  }
  if (nits.size() != length)
    throw ParseError("expected " + std::to_string(length) + " nits, got " +
                         std::to_string(nits.size()),
                     nits.size() + 1);
  return Word(group, std::move(nits));
}

BigInt word_to_int(const Word& w) {
  BigInt v = 0;
  const std::uint32_t base = w.group().order();
  for (auto n : w.nits()) v = v * base + n;
  return v;
}

Word int_to_word(const BigInt& value, const GroupSpec& group, std::size_t length) {
  if (value < 0) throw RangeError("negative value cannot encode a word");
  const BigInt limit = big_pow(group.order(), length);
  if (value >= limit)
    throw RangeError(value.str() + " is out of range for " + std::to_string(length) + " nits over " +
                     group.to_string());
  std::vector<std::uint32_t> nits(length);
  BigInt v = value;
  for (std::size_t i = length; i-- > 0;) {
    nits[i] = static_cast<std::uint32_t>(v % group.order());
    v /= group.order();
  }
  return Word(group, std::move(nits));
}

std::uint64_t space_size_u64(const GroupSpec& group, std::size_t length) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / group.order())
      throw RangeError(group.to_string() + "^" + std::to_string(length) + " exceeds 64 bits");
    n *= group.order();
  }
  return n;
}

std::uint64_t word_to_u64(const Word& w) {
  space_size_u64(w.group(), w.length());
  std::uint64_t v = 0;
  const std::uint64_t base = w.group().order();
  for (auto n : w.nits()) v = v * base + n;
  return v;
}

Word u64_to_word(std::uint64_t value, const GroupSpec& group, std::size_t length) {
  const std::uint64_t limit = space_size_u64(group, length);
  if (value >= limit)
    throw RangeError(std::to_string(value) + " is out of range for " + std::to_string(length) +
                     " nits over " + group.to_string());
  std::vector<std::uint32_t> nits(length);
  for (std::size_t i = length; i-- > 0;) {
    nits[i] = static_cast<std::uint32_t>(value % group.order());
    value /= group.order();
  }
  return Word(group, std::move(nits));
}

std::pair<Word, Word> split_halves(const Word& w) {
  if (w.length() % 2 != 0)
    throw DimensionError("cannot split a word of odd length " + std::to_string(w.length()));
  const auto nits = w.nits();
  const std::size_t t = w.length() / 2;
  return {Word(w.group(), {nits.begin(), nits.begin() + t}),
          Word(w.group(), {nits.begin() + t, nits.end()})};
}

Word concat(const Word& a, const Word& b) {
  if (!(a.group() == b.group())) throw DimensionError("concat: words over different groups");
  std::vector<std::uint32_t> nits(a.nits().begin(), a.nits().end());
  nits.insert(nits.end(), b.nits().begin(), b.nits().end());
  return Word(a.group(), std::move(nits));
}

}  // namespace gdes
