#include "wildfront/grid.hpp"

namespace wildfront {

void SliceGrid::validate() const {
  if (nu < 2 || nv < 2) throw Error(ErrorCode::InvalidArgument, "slice grid needs at least 2x2 nodes");
  if (!(hi.x() > lo.x()) || !(hi.y() > lo.y()) || !lo.allFinite() || !hi.allFinite())
    throw Error(ErrorCode::InvalidArgument, "slice grid bounds must be finite with lo < hi");
}

std::vector<Point3> SliceGrid::nodes() const {
  validate();
  std::vector<Point3> out;
  out.reserve(size());
  for (std::size_t r = 0; r < nv; ++r)
    for (std::size_t c = 0; c < nu; ++c) out.push_back(node(r, c));
  return out;
}

void BoxGrid::validate() const {
  if (nx < 2 || ny < 2 || nz < 2) throw Error(ErrorCode::InvalidArgument, "box grid needs at least 2 nodes per axis");
  if (!(hi.array() > lo.array()).all() || !lo.allFinite() || !hi.allFinite())
    throw Error(ErrorCode::InvalidArgument, "box grid bounds must be finite with lo < hi");
}

std::vector<Point3> BoxGrid::nodes() const {
  validate();
  std::vector<Point3> out;
  out.reserve(size());
  for (std::size_t k = 0; k < nz; ++k)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) out.push_back(node(i, j, k));
  return out;
}

}  // namespace wildfront
