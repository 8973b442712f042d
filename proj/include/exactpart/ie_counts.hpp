#pragma once

// Inclusion–exclusion counts of ordered k-covers, k-partitions and k-packings
// for every α-small subset, and the decision tables derived from them.
//
// Counts include the empty set wherever the family contains it, so a tuple
// may have empty slots. With k = 0 the only tuple is the empty one.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <unordered_set>
#include <vector>

#include "exactpart/setsys.hpp"
#include "exactpart/transforms.hpp"

namespace exactpart {

enum class Arithmetic { exact, modular };

struct CountOptions {
  Arithmetic arithmetic = Arithmetic::exact;
  int threads = 1;
  // Exact mode only; modular mode keeps decisions alone.
  bool keep_counts = true;
};

// a(Y) = |{Z ⊆ Y : Z ∈ F↓}|, the zeta transform of the indicator of F↓.
[[nodiscard]] SmallTable<Integer> a_table(const ImplicitFamily& fam, Alpha alpha);

// Σ_j a_j(Y) z^j with a_j(Y) = |{Z ⊆ Y : |Z| = j, Z ∈ F}|.
[[nodiscard]] SmallTable<ZPolynomial> aj_polys(const ImplicitFamily& fam, Alpha alpha);

class CountTable {
 public:
  CountTable(std::shared_ptr<const SmallIndex> index, ProblemKind kind, int k_max, bool has_counts);

  [[nodiscard]] int n() const noexcept { return index_->n(); }
  [[nodiscard]] const Alpha& alpha() const noexcept { return index_->alpha(); }
  [[nodiscard]] const SmallIndex& index() const noexcept { return *index_; }
  [[nodiscard]] ProblemKind kind() const noexcept { return kind_; }
  [[nodiscard]] int k_max() const noexcept { return k_max_; }
  [[nodiscard]] bool has_counts() const noexcept { return has_counts_; }

  [[nodiscard]] bool defined(Mask x) const noexcept { return index_->is_small(x); }
  // Throws std::out_of_range unless x is α-small and 0 <= k <= k_max.
  [[nodiscard]] const Integer& count(Mask x, int k) const;
  [[nodiscard]] bool decision(Mask x, int k) const;

  // Records of (mask u64, k u16, flag u8), little-endian, for every entry.
  void dump(std::ostream& os) const;
  struct DumpRecord {
    std::uint64_t mask;
    std::uint16_t k;
    std::uint8_t flag;
  };
  static std::vector<DumpRecord> read_dump(std::istream& is);

  // Used while building; distinct k may be written from distinct threads.
  void store(Mask x, int k, bool decision);
  void store_counts(int k, SmallTable<Integer> counts);

 private:
  void check(Mask x, int k) const;

  std::shared_ptr<const SmallIndex> index_;
  ProblemKind kind_;
  int k_max_;
  bool has_counts_;
  std::vector<std::vector<bool>> dense_;            // [k][mask]
  std::vector<std::unordered_set<Mask>> sparse_;    // [k] -> masks with a true decision
  std::vector<std::unique_ptr<SmallTable<Integer>>> counts_;
};

// Σ_{Y⊆X} (−1)^{|X∖Y|} a(Y)^k. Requires member_down.
[[nodiscard]] CountTable cover_counts(const ImplicitFamily& fam, Alpha alpha, int k_max,
                                      const CountOptions& opts = {});
// [z^{|X|}] Σ_{Y⊆X} (−1)^{|X∖Y|} P_Y(z)^k with P_Y = Σ_j a_j(Y) z^j.
[[nodiscard]] CountTable partition_counts(const ImplicitFamily& fam, Alpha alpha, int k_max,
                                          const CountOptions& opts = {});
// [z^{|X|}] Σ_{Y⊆X} (−1)^{|X∖Y|} (1+z)^{|Y|} P_Y(z)^k.
[[nodiscard]] CountTable packing_counts(const ImplicitFamily& fam, Alpha alpha, int k_max,
                                        const CountOptions& opts = {});
[[nodiscard]] CountTable build_counts(ProblemKind kind, const ImplicitFamily& fam, Alpha alpha,
                                      int k_max, const CountOptions& opts = {});

// χ[S] for every α-small S, derived from the cover decisions over the
// independent sets, together with the recurrence
//   a[S] = a[S∖{v}] + a[S∖N[v]] + 1,   a[∅] = 0,
// which counts the nonempty independent subsets of S.
struct ChiTable {
  SmallTable<int> chi;
  SmallTable<Integer> nonempty_independent;
};
[[nodiscard]] ChiTable chi_table(const Graph& g, Alpha alpha, const CountOptions& opts = {});

}  // namespace exactpart
