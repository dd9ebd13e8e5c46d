#include "gdes/group.hpp"

#include <numeric>
#include <sstream>

#include "gdes/error.hpp"

namespace gdes {

namespace {

constexpr std::uint64_t kMaxOrder = 1u << 16;

}  // namespace

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw InvalidElement("group needs at least one cyclic factor");
  std::uint64_t order = 1;
  std::uint64_t exponent = 1;
  for (auto m : moduli_) {
    if (m < 2) throw InvalidElement("cyclic factor modulus must be >= 2, got " + std::to_string(m));
    order *= m;
    if (order > kMaxOrder) throw InvalidElement("group order exceeds 65536");
    exponent = std::lcm(exponent, std::uint64_t{m});
  }
  order_ = static_cast<std::uint32_t>(order);
  exponent_ = static_cast<std::uint32_t>(exponent);
}

GroupSpec GroupSpec::parse(const std::string& text) {
  std::vector<std::uint32_t> moduli;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, 'x')) {
    if (!part.empty() && (part[0] == 'Z' || part[0] == 'z')) part.erase(0, 1);
    if (part.empty()) throw ParseError("empty cyclic factor in group '" + text + "'", 0);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &used);
    } catch (const std::exception&) {
      throw ParseError("bad cyclic factor '" + part + "' in group '" + text + "'", 0);
    }
    if (used != part.size()) throw ParseError("bad cyclic factor '" + part + "'", 0);
    moduli.push_back(static_cast<std::uint32_t>(v));
  }
  return GroupSpec(std::move(moduli));
}

bool GroupSpec::contains(const GroupElem& e) const {
  if (e.residues.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    if (e.residues[i] >= moduli_[i]) return false;
  return true;
}

void GroupSpec::check(const GroupElem& e) const {
  if (!contains(e)) throw InvalidElement("element does not belong to " + to_string());
}

GroupElem GroupSpec::identity() const {
  return GroupElem{std::vector<std::uint32_t>(moduli_.size(), 0)};
}

GroupElem GroupSpec::element_at(std::uint32_t index) const {
  if (index >= order_) throw InvalidElement("element index out of range");
  GroupElem e{std::vector<std::uint32_t>(moduli_.size())};
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    e.residues[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return e;
}

std::uint32_t GroupSpec::index_of(const GroupElem& e) const {
  check(e);
  std::uint32_t index = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) index = index * moduli_[i] + e.residues[i];
  return index;
}

std::uint32_t GroupSpec::add_index(std::uint32_t a, std::uint32_t b) const {
  if (moduli_.size() == 1) {
    std::uint32_t s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const std::uint32_t m = moduli_[i];
    std::uint32_t s = a % m + b % m;
    if (s >= m) s -= m;
    out += s * scale;
    scale *= m;
    a /= m;
    b /= m;
  }
  return out;
}

std::uint32_t GroupSpec::neg_index(std::uint32_t a) const {
  if (moduli_.size() == 1) return a == 0 ? 0 : order_ - a;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const std::uint32_t m = moduli_[i];
    const std::uint32_t r = a % m;
    out += (r == 0 ? 0 : m - r) * scale;
    scale *= m;
    a /= m;
  }
  return out;
}

std::string GroupSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) s += "x";
    s += "Z" + std::to_string(moduli_[i]);
  }
  return s;
}

GroupElem gadd(const GroupSpec& spec, const GroupElem& a, const GroupElem& b) {
  spec.check(a);
  spec.check(b);
  GroupElem out{std::vector<std::uint32_t>(a.residues.size())};
  const auto moduli = spec.moduli();
  for (std::size_t i = 0; i < moduli.size(); ++i)
    out.residues[i] = (a.residues[i] + b.residues[i]) % moduli[i];
  return out;
}

GroupElem gneg(const GroupSpec& spec, const GroupElem& a) {
  spec.check(a);
  GroupElem out{std::vector<std::uint32_t>(a.residues.size())};
  const auto moduli = spec.moduli();
  for (std::size_t i = 0; i < moduli.size(); ++i)
    out.residues[i] = (moduli[i] - a.residues[i]) % moduli[i];
  return out;
}

GroupElem gsub(const GroupSpec& spec, const GroupElem& a, const GroupElem& b) {
  return gadd(spec, a, gneg(spec, b));
}

std::uint32_t characteristic(const GroupSpec& spec) { return spec.exponent(); }

}  // namespace gdes
