#include "gdes/permnet.hpp"

#include <algorithm>

#include "gdes/error.hpp"

namespace gdes {

FunctionTable::FunctionTable(GroupSpec group, std::size_t width, std::vector<std::uint64_t> image)
    : group_(std::move(group)), width_(width), image_(std::move(image)) {
  const std::uint64_t n = space_size_u64(group_, width_);
  if (image_.size() != n)
    throw DimensionError("function table over " + group_.to_string() + "^" +
                         std::to_string(width_) + " needs " + std::to_string(n) + " entries, got " +
                         std::to_string(image_.size()));
  for (std::size_t y = 0; y < image_.size(); ++y)
    if (image_[y] >= n)
      throw RangeError("function table entry " + std::to_string(y) + " = " +
                       std::to_string(image_[y]) + " is outside the codomain");
}

FunctionTable FunctionTable::constant_zero(const GroupSpec& group, std::size_t width) {
  return FunctionTable(group, width, std::vector<std::uint64_t>(space_size_u64(group, width), 0));
}

Word FunctionTable::operator()(const Word& y) const {
  if (y.length() != width_ || !(y.group() == group_))
    throw DimensionError("function table input has the wrong shape");
  return u64_to_word(image_[word_to_u64(y)], group_, width_);
}

bool FunctionTable::is_injective() const {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool FunctionTable::is_odot_identity() const {
  return std::all_of(image_.begin(), image_.end(), [](std::uint64_t v) { return v == 0; });
}

FunctionTable fn_odot(const FunctionTable& f, const FunctionTable& g) {
  if (f.width() != g.width() || !(f.group() == g.group()))
    throw DimensionError("fn_odot: tables over different domains");
  std::vector<std::uint64_t> out(f.size());
  for (std::uint64_t y = 0; y < f.size(); ++y) {
    const Word a = u64_to_word(f.at(y), f.group(), f.width());
    const Word b = u64_to_word(g.at(y), g.group(), g.width());
    out[y] = word_to_u64(word_add(a, b));
  }
  return FunctionTable(f.group(), f.width(), std::move(out));
}

FunctionTable fn_negate(const FunctionTable& f) {
  std::vector<std::uint64_t> out(f.size());
  for (std::uint64_t y = 0; y < f.size(); ++y)
    out[y] = word_to_u64(word_neg(u64_to_word(f.at(y), f.group(), f.width())));
  return FunctionTable(f.group(), f.width(), std::move(out));
}

RoundFunction::RoundFunction(SBoxRoundSpec spec)
    : sbox_(std::make_shared<const SBoxRoundSpec>(std::move(spec))) {}

RoundFunction::RoundFunction(FunctionTable table, bool keyed)
    : table_(std::make_shared<const FunctionTable>(std::move(table))), keyed_(keyed) {}

const GroupSpec& RoundFunction::group() const { return sbox_ ? sbox_->group() : table_->group(); }

std::size_t RoundFunction::half_width() const {
  return sbox_ ? sbox_->half_width() : table_->width();
}

std::size_t RoundFunction::subkey_length() const {
  if (sbox_) return sbox_->subkey_length();
  return keyed_ ? table_->width() : 0;
}

Word RoundFunction::evaluate(const Word& right, const Word& subkey) const {
  if (sbox_) return round_function_f(*sbox_, right, subkey);
  if (subkey.length() != subkey_length())
    throw DimensionError("subkey must have " + std::to_string(subkey_length()) + " nits");
  return keyed_ ? (*table_)(word_add(right, subkey)) : (*table_)(right);
}

Halves sigma(const RoundFunction& f, const Word& subkey, const Halves& state) {
  if (state.left.length() != f.half_width() || state.right.length() != f.half_width())
    throw DimensionError("Feistel halves must have " + std::to_string(f.half_width()) + " nits");
  return {state.right, word_add(state.left, f.evaluate(state.right, subkey))};
}

Halves sigma_inv(const RoundFunction& f, const Word& subkey, const Halves& state) {
  if (state.left.length() != f.half_width() || state.right.length() != f.half_width())
    throw DimensionError("Feistel halves must have " + std::to_string(f.half_width()) + " nits");
  return {word_sub(state.right, f.evaluate(state.left, subkey)), state.left};
}

Halves psi(std::span<const KeyedRound> rounds, Halves state) {
  for (const auto& r : rounds) state = sigma(r.f, r.subkey, state);
  return state;
}

CipherSpec::CipherSpec(Params params) : p_(std::move(params)) {
  const std::size_t t = p_.half_width;
  if (t == 0) throw SpecError("/t", "half width must be positive");
  if (p_.initial_perm.in_length() != 2 * t || p_.initial_perm.out_length() != 2 * t)
    throw SpecError("/initial_perm", "must map " + std::to_string(2 * t) + " nits to " +
                                         std::to_string(2 * t));
  if (!p_.initial_perm.is_permutation())
    throw SpecError("/initial_perm", "is not a bijection");
  final_perm_ = wiremap_invert(p_.initial_perm);

  if (p_.key_schedule.size() != p_.rounds)
    throw SpecError("/key_schedule", "has " + std::to_string(p_.key_schedule.size()) +
                                         " entries for " + std::to_string(p_.rounds) + " rounds");
  if (p_.rounds > 0 && p_.round_fns.empty())
    throw SpecError("/round_fn", "no round function given");
  if (p_.round_fns.size() > 1 && p_.round_fns.size() != p_.rounds)
    throw SpecError("/round_fn", "needs one function, or one per round (" +
                                     std::to_string(p_.rounds) + ")");
  for (std::size_t k = 0; k < p_.round_fns.size(); ++k) {
    const auto& f = p_.round_fns[k];
    const std::string path = "/round_fn/" + std::to_string(k);
    if (!(f.group() == p_.group)) throw SpecError(path, "round function is over a different group");
    if (f.half_width() != t)
      throw SpecError(path, "round function width " + std::to_string(f.half_width()) +
                                " does not match t = " + std::to_string(t));
  }
  for (std::size_t r = 0; r < p_.key_schedule.size(); ++r) {
    const auto& ks = p_.key_schedule[r];
    const std::string path = "/key_schedule/" + std::to_string(r);
    if (ks.in_length() != p_.key_length)
      throw SpecError(path, "reads " + std::to_string(ks.in_length()) + " key nits, key has " +
                                std::to_string(p_.key_length));
    const std::size_t need = round_fn(r).subkey_length();
    if (ks.out_length() != need)
      throw SpecError(path, "produces " + std::to_string(ks.out_length()) +
                                " subkey nits, the round function needs " + std::to_string(need));
  }
}

void CipherSpec::check_key(const Word& key) const {
  if (key.length() != p_.key_length || !(key.group() == p_.group))
    throw DimensionError("key must be " + std::to_string(p_.key_length) + " nits over " +
                         p_.group.to_string());
}

void CipherSpec::check_block(const Word& block) const {
  if (block.length() != block_length() || !(block.group() == p_.group))
    throw DimensionError("block must be " + std::to_string(block_length()) + " nits over " +
                         p_.group.to_string());
}

std::vector<Word> CipherSpec::subkeys(const Word& key) const {
  check_key(key);
  std::vector<Word> out;
  out.reserve(p_.rounds);
  for (const auto& ks : p_.key_schedule) out.push_back(wiremap_apply(ks, key));
  return out;
}

std::vector<KeyedRound> CipherSpec::keyed_rounds(const Word& key) const {
  std::vector<KeyedRound> out;
  auto sk = subkeys(key);
  for (std::size_t r = 0; r < p_.rounds; ++r) out.push_back({round_fn(r), std::move(sk[r])});
  return out;
}

Word gdes_encrypt(const CipherSpec& spec, const Word& key, const Word& m) {
  spec.check_block(m);
  auto [left, right] = split_halves(wiremap_apply(spec.initial_perm(), m));
  const auto rounds = spec.keyed_rounds(key);
  Halves s = psi(rounds, {std::move(left), std::move(right)});
  if (spec.final_swap()) std::swap(s.left, s.right);
  return wiremap_apply(spec.final_perm(), concat(s.left, s.right));
}

Word gdes_decrypt(const CipherSpec& spec, const Word& key, const Word& c) {
  spec.check_block(c);
  auto [left, right] = split_halves(wiremap_apply(spec.initial_perm(), c));
  Halves s{std::move(left), std::move(right)};
  if (spec.final_swap()) std::swap(s.left, s.right);
  const auto rounds = spec.keyed_rounds(key);
  for (std::size_t r = rounds.size(); r-- > 0;) s = sigma_inv(rounds[r].f, rounds[r].subkey, s);
  return wiremap_apply(spec.final_perm(), concat(s.left, s.right));
}

CipherSpec expand_cipher(const CipherSpec& spec, const GroupEmbedding& embedding) {
  if (!(spec.group() == embedding.from()))
    throw DimensionError("expand_cipher: embedding starts from a different group");
  CipherSpec::Params p;
  p.group = embedding.to();
  p.half_width = spec.half_width();
  p.rounds = spec.rounds();
  p.initial_perm = spec.initial_perm();
  p.key_length = spec.key_length();
  p.key_schedule = spec.key_schedule();
  p.final_swap = spec.final_swap();
  for (const auto& f : spec.round_fns()) {
    const SBoxRoundSpec* sb = f.sbox();
    if (!sb) throw SpecError("/round_fn", "expand_cipher needs S-box round functions");
    std::vector<SBox> boxes;
    for (const auto& b : sb->boxes()) boxes.push_back(sbox_expand(b, embedding));
    p.round_fns.emplace_back(SBoxRoundSpec(std::move(boxes), sb->expansion()));
  }
  return CipherSpec(std::move(p));
}

}  // namespace gdes
