#pragma once

// Index bookkeeping shared by the spin-1 and spin-2 derivations: the
// Levi-Civita symbol, the antisymmetric-pair codec, plane-wave momenta and
// named column layouts with stored index positions.

#include <array>
#include <complex>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bw {

using cd = std::complex<double>;

inline constexpr double eta(int mu) { return mu == 0 ? 1.0 : -1.0; }

/// epsilon^{abcd} with epsilon^{0123} = +1.
int levi_civita_upper(int a, int b, int c, int d);
/// epsilon_{abcd}; equals -epsilon^{abcd}.
int levi_civita_lower(int a, int b, int c, int d);
/// Mixed positions: pos[i] is 'u' or 'l' for slot i.
double levi_civita(std::string_view pos, int a, int b, int c, int d);

inline constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct PairSlot {
  int index;  // position in kPairs
  int sign;   // +1 for a<b, -1 for a>b
};

/// Codec for antisymmetric index pairs; nullopt when a == b.
std::optional<PairSlot> pair_slot(int a, int b);
std::string pair_name(int index);

/// Plane wave exp(-i p.x): d_mu -> -i p_mu.
struct Momentum {
  std::array<cd, 4> up{};

  [[nodiscard]] cd upper(int mu) const { return up[static_cast<std::size_t>(mu)]; }
  [[nodiscard]] cd lower(int mu) const { return eta(mu) * upper(mu); }
  [[nodiscard]] cd p2() const;
  [[nodiscard]] cd d_lower(int mu) const { return cd(0, -1) * lower(mu); }
  [[nodiscard]] cd d_upper(int mu) const { return cd(0, -1) * upper(mu); }
};

enum class BlockKind { scalar, vector, pair, vector_vector, pair_vector, vector_pair, pair_pair };

struct Block {
  std::string name;
  BlockKind kind;
  std::string stored;  // stored index positions, one 'u'/'l' per slot
  int offset = 0;
  int size = 0;
};

struct Column {
  int index;
  double factor;  // metric and pair-sign factor relating the request to storage
};

/// Ordered set of named component blocks mapped onto columns.
class Layout {
 public:
  Layout& add(std::string name, BlockKind kind, std::string stored);

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }
  [[nodiscard]] const Block& block(std::string_view name) const;
  [[nodiscard]] bool has(std::string_view name) const;

  /// Column of component `name` at index values `idx` with positions `pos`;
  /// nullopt for identically zero entries (repeated antisymmetric indices).
  [[nodiscard]] std::optional<Column> column(std::string_view name, const std::vector<int>& idx,
                                             std::string_view pos) const;

  [[nodiscard]] std::vector<std::string> labels() const;

 private:
  std::vector<Block> blocks_;
  int size_ = 0;
};

/// One linear row over a Layout, assembled term by term.
class RowBuilder {
 public:
  explicit RowBuilder(const Layout& layout) : layout_(&layout), v_(static_cast<std::size_t>(layout.size())) {}

  RowBuilder& add(cd coeff, std::string_view name, std::initializer_list<int> idx,
                  std::string_view pos);
  RowBuilder& add(cd coeff, std::string_view name, const std::vector<int>& idx,
                  std::string_view pos);

  [[nodiscard]] const std::vector<cd>& coeffs() const { return v_; }
  [[nodiscard]] bool is_zero() const;

 private:
  const Layout* layout_;
  std::vector<cd> v_;
};

}  // namespace bw
