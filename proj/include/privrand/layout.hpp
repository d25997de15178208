#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace privrand {

struct Register {
  std::string label;
  std::size_t dim = 1;
  std::string party;  // one of A, B, C, E by convention
};

// Ordered register list defining the tensor factorization of a state space.
// Register order is authoritative: indices are row-major multi-indices with
// the first register most significant.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::initializer_list<Register> regs) : regs_(regs) { check(); }
  explicit SubsystemLayout(std::vector<Register> regs) : regs_(std::move(regs)) { check(); }

  std::size_t size() const { return regs_.size(); }
  const Register& at(std::size_t i) const { return regs_.at(i); }
  const std::vector<Register>& registers() const { return regs_; }

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (const auto& r : regs_) d *= r.dim;
    return d;
  }

  std::optional<std::size_t> find(const std::string& label) const {
    for (std::size_t i = 0; i < regs_.size(); ++i)
      if (regs_[i].label == label) return i;
    return std::nullopt;
  }

  std::size_t require(const std::string& label) const {
    auto i = find(label);
    if (!i) throw std::invalid_argument("unknown register label: " + label);
    return *i;
  }

  bool has(const std::string& label) const { return find(label).has_value(); }

  // stride of register i in the flat row-major index
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(regs_.size(), 1);
    for (std::size_t i = regs_.size(); i-- > 1;) s[i - 1] = s[i] * regs_[i].dim;
    return s;
  }

  SubsystemLayout concat(const SubsystemLayout& other) const {
    std::vector<Register> regs = regs_;
    for (const auto& r : other.regs_) {
      if (has(r.label)) throw std::invalid_argument("register label collision: " + r.label);
      regs.push_back(r);
    }
    return SubsystemLayout(std::move(regs));
  }

  SubsystemLayout keep_only(std::span<const std::size_t> indices) const {
    std::vector<Register> regs;
    for (std::size_t i : indices) regs.push_back(regs_.at(i));
    return SubsystemLayout(std::move(regs));
  }

  // remaining registers, original order preserved
  SubsystemLayout drop(std::span<const std::string> labels) const {
    std::set<std::size_t> dropped;
    for (const auto& l : labels) dropped.insert(require(l));
    std::vector<Register> regs;
    for (std::size_t i = 0; i < regs_.size(); ++i)
      if (!dropped.count(i)) regs.push_back(regs_[i]);
    return SubsystemLayout(std::move(regs));
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& r : regs_) out.push_back(r.label);
    return out;
  }

  std::vector<std::string> labels_of_party(const std::string& party) const {
    std::vector<std::string> out;
    for (const auto& r : regs_) {
      if (r.party == party) out.push_back(r.label);
    }
    return out;
  }

  std::vector<std::string> parties() const {
    std::vector<std::string> out;
    for (const auto& r : regs_)
      if (std::find(out.begin(), out.end(), r.party) == out.end()) out.push_back(r.party);
    return out;
  }

  void set_party(const std::string& label, const std::string& party) {
    regs_[require(label)].party = party;
  }

  // every register's party replaced via map lookup; missing keys left as-is
  SubsystemLayout with_party_map(const std::vector<std::pair<std::string, std::string>>& map) const {
    std::vector<Register> regs = regs_;
    for (auto& r : regs)
      for (const auto& [from, to] : map)
        if (r.party == from) { r.party = to; break; }
    return SubsystemLayout(std::move(regs));
  }

 private:
  void check() const {
    std::set<std::string> seen;
    for (const auto& r : regs_) {
      if (r.dim < 1) throw std::invalid_argument("register dim must be >= 1: " + r.label);
      if (!seen.insert(r.label).second)
        throw std::invalid_argument("duplicate register label: " + r.label);
    }
  }

  std::vector<Register> regs_;
};

// Precomputed flat-index offsets for a register subset, used by all subsystem
// operations.  `sel` offsets follow the order the registers were listed in;
// `rest` offsets follow layout order.
class IndexSplit {
 public:
  IndexSplit(const SubsystemLayout& layout, std::span<const std::size_t> selected) {
    const auto strides = layout.strides();
    std::vector<bool> is_sel(layout.size(), false);
    for (std::size_t i : selected) {
      if (i >= layout.size()) throw std::out_of_range("register index out of range");
      if (is_sel[i]) throw std::invalid_argument("register selected twice");
      is_sel[i] = true;
    }
    std::vector<std::size_t> sel_dims, sel_strides, rest_dims, rest_strides;
    for (std::size_t i : selected) {
      sel_dims.push_back(layout.at(i).dim);
      sel_strides.push_back(strides[i]);
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
      if (!is_sel[i]) {
        rest_dims.push_back(layout.at(i).dim);
        rest_strides.push_back(strides[i]);
      }
    }
    sel_offsets_ = build_offsets(sel_dims, sel_strides);
    rest_offsets_ = build_offsets(rest_dims, rest_strides);
  }

  static IndexSplit by_labels(const SubsystemLayout& layout,
                              std::span<const std::string> labels) {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(layout.require(l));
    return IndexSplit(layout, idx);
  }

  std::size_t sel_dim() const { return sel_offsets_.size(); }
  std::size_t rest_dim() const { return rest_offsets_.size(); }
  std::size_t compose(std::size_t sel, std::size_t rest) const {
    return sel_offsets_[sel] + rest_offsets_[rest];
  }

 private:
  static std::vector<std::size_t> build_offsets(const std::vector<std::size_t>& dims,
                                                const std::vector<std::size_t>& strides) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    std::vector<std::size_t> offsets(total, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx, off = 0;
      for (std::size_t k = dims.size(); k-- > 0;) {
        off += (rem % dims[k]) * strides[k];
        rem /= dims[k];
      }
      offsets[idx] = off;
    }
    return offsets;
  }

  std::vector<std::size_t> sel_offsets_;
  std::vector<std::size_t> rest_offsets_;
};

}  // namespace privrand
