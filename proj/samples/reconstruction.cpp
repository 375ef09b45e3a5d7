// Builds a small frame on H^2, reconstructs a vector through the canonical
// dual and prints the frame bounds of the frame and its dual.

#include <iostream>

#include "rqframes/frames.hpp"

int main() {
  using namespace rqframes;
  const quaternion i = quaternion::i(), j = quaternion::j();

  // Two nodes, two vectors each.
  quadrature_measure measure({{quaternion(0), 1.0}, {quaternion(1), 0.5}});
  frame_family f(2, 2, measure,
                 {{qvector{1, 0}, qvector{0, 1}},
                  {qvector{i, j}, qvector{quaternion(1), quaternion{0, 0, 0, 2}}}});

  const auto b = frame_bounds(f);
  const auto db = frame_bounds(canonical_dual(f));
  std::cout << "frame bounds      [" << b.lower << ", " << b.upper << "]\n";
  std::cout << "dual frame bounds [" << db.lower << ", " << db.upper << "]  (1/M = " << 1 / b.upper
            << ", 1/m = " << 1 / b.lower << ")\n";

  const qvector phi{quaternion{1, 2, 3, 4}, quaternion{-1, 0, 0.5, 0}};
  const qvector back = reconstruct(f, phi);
  std::cout << "reconstruction residual " << norm(back - phi) << '\n';
}
