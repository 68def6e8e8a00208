#ifndef FGM_FGBALL_HPP
#define FGM_FGBALL_HPP

#include <map>
#include <string>
#include <vector>

namespace fgm {

// A point of a finitely generated group in normal-form coordinates:
//   free-abelian-Z<d>  — the d integer coordinates;
//   heisenberg-Z       — (a, b, c) for x^a y^b z^c with z = [x, y] central,
//                        matching the upper-triangular integer matrices;
//   lamplighter-Z2     — [position, sorted lit-lamp positions...].
using BallPoint = std::vector<long long>;

// Exact word-metric ball of the given radius, enumerated breadth-first from
// the identity over the standard generating set (free-abelian: +-e_i;
// heisenberg: x, y and inverses; lamplighter: toggle a and the shifts t,
// t^-1). Elements are listed radius-first, lexicographic within each layer.
struct FgBall {
  std::string group_id;
  int radius = 0;
  std::vector<BallPoint> elements;
  std::vector<int> metric;  // word length per element
  std::map<BallPoint, int> index;

  // Position of p in elements, or -1 when p lies outside the ball.
  int index_of(const BallPoint& p) const;
};

// Enumerates the ball; throws when the element count would exceed 10^6 or
// the family is unknown.
FgBall enumerate_ball(const std::string& group_id, int radius);

// Group law and inversion in normal form; defined on all of the group, not
// just on any enumerated ball.
BallPoint ball_mult(const std::string& group_id, const BallPoint& a,
                    const BallPoint& b);
BallPoint ball_inv(const std::string& group_id, const BallPoint& a);
BallPoint ball_identity(const std::string& group_id);

// The standard generating set used by enumerate_ball (closed under inverse).
std::vector<BallPoint> ball_generators(const std::string& group_id);

std::string serialize_ball(const FgBall& ball);

}  // namespace fgm

#endif  // FGM_FGBALL_HPP
