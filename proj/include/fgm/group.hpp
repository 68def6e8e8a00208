#ifndef FGM_GROUP_HPP
#define FGM_GROUP_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fgm {

// A finite group given by its Cayley table over element indices 0..order-1.
// Index 0 is always the identity. Tables are immutable after construction.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mult_table;  // row-major: mult_table[a * order + b] = a*b
  int identity = 0;
  std::vector<int> inv_table;
  std::vector<std::string> labels;  // optional, empty or size == order
  std::string name;                 // canonical descriptor, e.g. "cyclic:4"

  int op(int a, int b) const { return mult_table[a * order + b]; }
  int inv(int a) const { return inv_table[a]; }
  // s^-1 t, the difference entering Gram matrices of positive definite functions
  int quotient(int s, int t) const { return op(inv_table[s], t); }
  int conjugate(int s, int g) const {  // s^-1 g s
    return op(op(inv_table[s], g), s);
  }
  bool is_abelian() const;
  int element_order(int g) const;
  std::string label(int g) const;
};

// Families: cyclic:n, dihedral:n (order 2n), symmetric:n (n <= 4),
// quaternion:8, product:<spec>,<spec>[,...]. Order is capped at 64.
FiniteGroup construct_group(const std::string& descriptor);

// Group-file JSON: {"order": n, "identity": 0, "mult": [[...]], "labels": [...]}.
// Validates the full type invariants (Latin square, identity, inverses,
// associativity) and throws std::runtime_error on violation.
FiniteGroup parse_group(const std::string& json_text);
std::string serialize_group(const FiniteGroup& g);

// Accepts either a family descriptor or inline/loaded JSON ("@file" form is
// resolved by the CLI before calling this).
FiniteGroup group_from_spec(const std::string& spec);

// {s : sg = gs}; contains identity and g.
std::vector<int> centralizer(const FiniteGroup& g, int elem);

// All subgroups, each as a sorted element list; brute force, order <= 16.
std::vector<std::vector<int>> enumerate_subgroups(const FiniteGroup& g);

// The |G| characters of an abelian group, each a vector of unit complex
// values; exact root-of-unity arithmetic internally. Throws on non-abelian
// input. The first character is the trivial one.
std::vector<std::vector<std::complex<double>>> abelian_characters(
    const FiniteGroup& g);

}  // namespace fgm

#endif  // FGM_GROUP_HPP
