#include "coarse/svg.hpp"

#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

constexpr int kCell = 10;
constexpr int kMargin = 30;

GridRegion clip_points(const Box& box, const PointSet& pts) {
  GridRegion r(box);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (box.contains(pts[k])) r.insert(pts[k]);
  }
  return r;
}

}  // namespace

std::string plot_slice(const Box& box, const Slice& slice, const std::vector<SliceLayer>& layers,
                       std::optional<std::size_t> face_axis) {
  const std::size_t d = box.dim();
  if (d < 2) throw DomainError("a slice needs at least two dimensions");
  if (slice.x_axis >= d || slice.y_axis >= d || slice.x_axis == slice.y_axis) {
    throw DomainError("slice axes must be two distinct axes below " + std::to_string(d));
  }
  if (slice.at.size() != d) throw DomainError("slice point has the wrong dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (i == slice.x_axis || i == slice.y_axis) continue;
    if (slice.at[i] < box.lo[i] || slice.at[i] > box.hi[i]) {
      throw DomainError("slice coordinate " + std::to_string(slice.at[i]) + " on axis " +
                        std::to_string(i) + " lies outside the box");
    }
  }
  for (const auto& l : layers) {
    if (l.cells.box() != box) throw DomainError("layer '" + l.label + "' uses another box");
  }
  const Coord w = box.extent(slice.x_axis), h = box.extent(slice.y_axis);
  const Coord width = 2 * kMargin + w * kCell, height = 2 * kMargin + h * kCell + 20;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << w * kCell
      << "\" height=\"" << h * kCell << "\" fill=\"white\" stroke=\"black\"/>\n";
  Point p = slice.at;
  for (const auto& layer : layers) {
    out << "<g fill=\"" << layer.fill << "\"><title>" << layer.label << "</title>\n";
    for (Coord yi = 0; yi < h; ++yi) {
      for (Coord xi = 0; xi < w; ++xi) {
        p[slice.x_axis] = box.lo[slice.x_axis] + xi;
        p[slice.y_axis] = box.lo[slice.y_axis] + yi;
        if (!layer.cells.contains(p)) continue;
        // y grows upward.
        out << "<rect x=\"" << kMargin + xi * kCell << "\" y=\"" << kMargin + (h - 1 - yi) * kCell
            << "\" width=\"" << kCell << "\" height=\"" << kCell << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  if (face_axis) {
    const int fy = kMargin + static_cast<int>(h) * kCell / 2;
    const int fx = kMargin + static_cast<int>(w) * kCell / 2;
    if (*face_axis == slice.x_axis) {
      out << "<text x=\"2\" y=\"" << fy << "\" font-size=\"12\">F-</text>\n";
      out << "<text x=\"" << width - kMargin + 4 << "\" y=\"" << fy
          << "\" font-size=\"12\">F+</text>\n";
    } else if (*face_axis == slice.y_axis) {
      out << "<text x=\"" << fx << "\" y=\"" << height - 24 << "\" font-size=\"12\">F-</text>\n";
      out << "<text x=\"" << fx << "\" y=\"20\" font-size=\"12\">F+</text>\n";
    }
  }
  out << "<text x=\"" << kMargin << "\" y=\"" << height - 6 << "\" font-size=\"11\">axes ("
      << slice.x_axis << ", " << slice.y_axis << ")";
  for (std::size_t i = 0; i < d; ++i) {
    if (i != slice.x_axis && i != slice.y_axis) out << " x" << i << "=" << slice.at[i];
  }
  if (face_axis) out << " faces on axis " << *face_axis;
  out << "</text>\n</svg>\n";
  return out.str();
}

std::string plot_partition(const PartitionCertificate& cert, const Slice& slice,
                           std::size_t face_axis, const std::vector<PointSet>& obstacles) {
  const Box& box = cert.L.box();
  std::vector<SliceLayer> layers{{"U", "#cfe3f7", cert.U}, {"W", "#e6e6e6", cert.W}};
  GridRegion obs(box);
  for (const auto& s : obstacles) obs = obs | clip_points(box, s);
  layers.push_back({"obstacles", "#555555", obs});
  layers.push_back({"L", "#d62728", cert.L});
  return plot_slice(box, slice, layers, face_axis);
}

std::string plot_obstruction(const ObstructionCertificate& cert, const Slice& slice,
                             const std::vector<CoverFamily>& families) {
  const Box& box = cert.C.box();
  std::vector<SliceLayer> layers;
  if (!cert.chain.empty()) {
    GridRegion last = cert.chain.back();
    last.set_adjacency(Adjacency::kFace);
    layers.push_back({"final region", "#e6e6e6", last});
  }
  GridRegion fam(box);
  for (const auto& f : families) {
    for (const auto& s : f.sets) fam = fam | clip_points(box, s);
  }
  layers.push_back({"family sets", "#555555", fam});
  layers.push_back({"C", "#1f77b4", cert.C});
  return plot_slice(box, slice, layers, cert.crossing_axis);
}

}  // namespace coarse
