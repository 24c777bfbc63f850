#include "bw/tensor.hpp"

#include <stdexcept>

namespace bw {

int levi_civita_upper(int a, int b, int c, int d) {
  const std::array<int, 4> v{a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    if (v[i] < 0 || v[i] > 3) throw std::out_of_range("Levi-Civita index");
    for (int j = i + 1; j < 4; ++j)
      if (v[i] == v[j]) return 0;
  }
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[i] > v[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

int levi_civita_lower(int a, int b, int c, int d) { return -levi_civita_upper(a, b, c, d); }

double levi_civita(std::string_view pos, int a, int b, int c, int d) {
  if (pos.size() != 4) throw std::invalid_argument("Levi-Civita position string");
  double f = levi_civita_upper(a, b, c, d);
  const std::array<int, 4> v{a, b, c, d};
  for (std::size_t i = 0; i < 4; ++i)
    if (pos[i] == 'l') f *= eta(v[i]);
  return f;
}

std::optional<PairSlot> pair_slot(int a, int b) {
  if (a == b) return std::nullopt;
  const int lo = a < b ? a : b;
  const int hi = a < b ? b : a;
  for (int k = 0; k < 6; ++k)
    if (kPairs[static_cast<std::size_t>(k)][0] == lo && kPairs[static_cast<std::size_t>(k)][1] == hi)
      return PairSlot{k, a < b ? 1 : -1};
  throw std::out_of_range("pair index");
}

std::string pair_name(int index) {
  const auto& p = kPairs.at(static_cast<std::size_t>(index));
  return std::to_string(p[0]) + std::to_string(p[1]);
}

cd Momentum::p2() const {
  cd s = 0;
  for (int mu = 0; mu < 4; ++mu) s += upper(mu) * lower(mu);
  return s;
}

namespace {

int kind_size(BlockKind k) {
  switch (k) {
    case BlockKind::scalar:
      return 1;
    case BlockKind::vector:
      return 4;
    case BlockKind::pair:
      return 6;
    case BlockKind::vector_vector:
      return 16;
    case BlockKind::pair_vector:
    case BlockKind::vector_pair:
      return 24;
    case BlockKind::pair_pair:
      return 36;
  }
  return 0;
}

std::size_t kind_slots(BlockKind k) {
  switch (k) {
    case BlockKind::scalar:
      return 0;
    case BlockKind::vector:
      return 1;
    case BlockKind::pair:
    case BlockKind::vector_vector:
      return 2;
    case BlockKind::pair_vector:
    case BlockKind::vector_pair:
      return 3;
    case BlockKind::pair_pair:
      return 4;
  }
  return 0;
}

}  // namespace

Layout& Layout::add(std::string name, BlockKind kind, std::string stored) {
  if (has(name)) throw std::invalid_argument("duplicate block " + name);
  if (stored.size() != kind_slots(kind)) throw std::invalid_argument("stored positions for " + name);
  const int n = kind_size(kind);
  blocks_.push_back(Block{std::move(name), kind, std::move(stored), size_, n});
  size_ += n;
  return *this;
}

const Block& Layout::block(std::string_view name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return b;
  throw std::out_of_range("no block " + std::string(name));
}

bool Layout::has(std::string_view name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return true;
  return false;
}

std::optional<Column> Layout::column(std::string_view name, const std::vector<int>& idx,
                                     std::string_view pos) const {
  const Block& b = block(name);
  if (idx.size() != b.stored.size() || pos.size() != b.stored.size())
    throw std::invalid_argument("index arity for block " + b.name);
  double f = 1.0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (pos[i] != b.stored[i]) f *= eta(idx[i]);

  auto pair_or_null = [](int x, int y) { return pair_slot(x, y); };
  switch (b.kind) {
    case BlockKind::scalar:
      return Column{b.offset, f};
    case BlockKind::vector:
      return Column{b.offset + idx[0], f};
    case BlockKind::pair: {
      const auto s = pair_or_null(idx[0], idx[1]);
      if (!s) return std::nullopt;
      return Column{b.offset + s->index, f * s->sign};
    }
    case BlockKind::vector_vector:
      return Column{b.offset + 4 * idx[0] + idx[1], f};
    case BlockKind::pair_vector: {
      const auto s = pair_or_null(idx[0], idx[1]);
      if (!s) return std::nullopt;
      return Column{b.offset + 4 * s->index + idx[2], f * s->sign};
    }
    case BlockKind::vector_pair: {
      const auto s = pair_or_null(idx[1], idx[2]);
      if (!s) return std::nullopt;
      return Column{b.offset + 6 * idx[0] + s->index, f * s->sign};
    }
    case BlockKind::pair_pair: {
      const auto s1 = pair_or_null(idx[0], idx[1]);
      const auto s2 = pair_or_null(idx[2], idx[3]);
      if (!s1 || !s2) return std::nullopt;
      return Column{b.offset + 6 * s1->index + s2->index, f * s1->sign * s2->sign};
    }
  }
  return std::nullopt;
}

std::vector<std::string> Layout::labels() const {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (const auto& b : blocks_) {
    switch (b.kind) {
      case BlockKind::scalar:
        out.push_back(b.name);
        break;
      case BlockKind::vector:
        for (int i = 0; i < 4; ++i) out.push_back(b.name + "[" + std::to_string(i) + "]");
        break;
      case BlockKind::pair:
        for (int k = 0; k < 6; ++k) out.push_back(b.name + "[" + pair_name(k) + "]");
        break;
      case BlockKind::vector_vector:
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            out.push_back(b.name + "[" + std::to_string(i) + "," + std::to_string(j) + "]");
        break;
      case BlockKind::pair_vector:
        for (int k = 0; k < 6; ++k)
          for (int j = 0; j < 4; ++j)
            out.push_back(b.name + "[" + pair_name(k) + "," + std::to_string(j) + "]");
        break;
      case BlockKind::vector_pair:
        for (int i = 0; i < 4; ++i)
          for (int k = 0; k < 6; ++k)
            out.push_back(b.name + "[" + std::to_string(i) + "," + pair_name(k) + "]");
        break;
      case BlockKind::pair_pair:
        for (int k = 0; k < 6; ++k)
          for (int l = 0; l < 6; ++l)
            out.push_back(b.name + "[" + pair_name(k) + "," + pair_name(l) + "]");
        break;
    }
  }
  return out;
}

RowBuilder& RowBuilder::add(cd coeff, std::string_view name, std::initializer_list<int> idx,
                            std::string_view pos) {
  return add(coeff, name, std::vector<int>(idx), pos);
}

RowBuilder& RowBuilder::add(cd coeff, std::string_view name, const std::vector<int>& idx,
                            std::string_view pos) {
  if (coeff == cd(0)) return *this;
  const auto col = layout_->column(name, idx, pos);
  if (col) v_[static_cast<std::size_t>(col->index)] += coeff * col->factor;
  return *this;
}

bool RowBuilder::is_zero() const {
  for (const auto& z : v_)
    if (z != cd(0)) return false;
  return true;
}

}  // namespace bw
