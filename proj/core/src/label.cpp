#include "drops/label.hpp"

#include <algorithm>
#include <stdexcept>

#include "drops/types.hpp"

namespace drops {

DropletLabel DropletLabel::empty() { return DropletLabel(Kind::Empty, 0, 0); }

DropletLabel DropletLabel::single(int k) {
  if (k < 1) throw std::invalid_argument("DropletLabel: spin index must be >= 1");
  return DropletLabel(Kind::Single, k, 0);
}

DropletLabel DropletLabel::pair(int k, int l) {
  if (k < 1 || l < 1 || k == l) throw std::invalid_argument("DropletLabel: bad pair indices");
  return DropletLabel(Kind::Pair, std::min(k, l), std::max(k, l));
}

DropletLabel DropletLabel::tau(int p) {
  if (p < 1 || p > 4) throw std::invalid_argument("DropletLabel: tau index must be 1..4");
  return DropletLabel(Kind::Tau, p, 0);
}

std::vector<int> DropletLabel::involved_spins() const {
  switch (kind_) {
    case Kind::Empty: return {};
    case Kind::Single: return {a_};
    case Kind::Pair: return {a_, b_};
    case Kind::Tau: return {1, 2, 3};
  }
  return {};
}

int DropletLabel::involved_count() const { return static_cast<int>(involved_spins().size()); }

int DropletLabel::min_spins() const {
  switch (kind_) {
    case Kind::Empty: return 1;
    case Kind::Single: return a_;
    case Kind::Pair: return b_;
    case Kind::Tau: return 3;
  }
  return 1;
}

std::vector<int> DropletLabel::ranks() const {
  switch (kind_) {
    case Kind::Empty: return {0};
    case Kind::Single: return {1};
    case Kind::Pair: return {0, 1, 2};
    case Kind::Tau:
      switch (a_) {
        case 1: return {1, 3};
        case 2: return {1, 2};
        case 3: return {1, 2};
        case 4: return {0};
      }
  }
  return {};
}

bool DropletLabel::has_rank(int j) const {
  const auto r = ranks();
  return std::find(r.begin(), r.end(), j) != r.end();
}

std::string DropletLabel::str() const {
  switch (kind_) {
    case Kind::Empty: return "empty";
    case Kind::Single: return std::to_string(a_);
    case Kind::Pair: return std::to_string(a_) + std::to_string(b_);
    case Kind::Tau: return "tau" + std::to_string(a_);
  }
  return {};
}

DropletLabel DropletLabel::parse(const std::string& s) {
  if (s == "empty") return empty();
  if (s.rfind("tau", 0) == 0 && s.size() == 4 && s[3] >= '1' && s[3] <= '4')
    return tau(s[3] - '0');
  if (s.size() == 1 && s[0] >= '1' && s[0] <= '9') return single(s[0] - '0');
  if (s.size() == 2 && s[0] >= '1' && s[0] <= '9' && s[1] >= '1' && s[1] <= '9')
    return pair(s[0] - '0', s[1] - '0');
  throw std::invalid_argument("DropletLabel: cannot parse '" + s + "'");
}

std::vector<DropletLabel> system_labels(int n_spins) {
  if (n_spins < 1 || n_spins > 3) throw Unsupported("system_labels: n_spins must be 1..3");
  std::vector<DropletLabel> out;
  out.push_back(DropletLabel::empty());
  for (int k = 1; k <= n_spins; ++k) out.push_back(DropletLabel::single(k));
  for (int k = 1; k <= n_spins; ++k)
    for (int l = k + 1; l <= n_spins; ++l) out.push_back(DropletLabel::pair(k, l));
  if (n_spins == 3)
    for (int p = 1; p <= 4; ++p) out.push_back(DropletLabel::tau(p));
  return out;
}

}  // namespace drops
