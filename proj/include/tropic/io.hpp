#pragma once

/**
 * @file io.hpp
 * @brief Text formats shared by the command-line tool and the tests.
 *
 * Every reader skips blank lines and lines starting with `#`, so a run
 * manifest written at the top of a file does not disturb re-parsing. The
 * grid reader is the exception: its `# dim ...` header is itself a comment
 * line, so only `##` lines are skipped there.
 */

#include "tropic/calculus.hpp"
#include "tropic/dequantize.hpp"
#include "tropic/fractal.hpp"
#include "tropic/matrix.hpp"
#include "tropic/polytope.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tropic {

/// `n m` followed by m lines `u v w`.
WeightedDigraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const WeightedDigraph& g);

/// One term per line: `re im d1 [d2 [d3]]`. All lines must share a dimension.
GeneralizedPolynomial read_polynomial(std::istream& in);
void write_polynomial(std::ostream& out, const GeneralizedPolynomial& f);

/// Header `# dim step.. origin.. extent..` then one value per line, row-major.
GridFunction read_grid(std::istream& in, const SemiringSpec& spec);
void write_grid(std::ostream& out, const GridFunction& f);

/// One point per line; all lines must have the same number of coordinates.
std::vector<Point> read_points(std::istream& in);
void write_points(std::ostream& out, const std::vector<Point>& points);

PointCloud read_point_cloud(std::istream& in);

/// Opens `path` for reading; throws InvalidArgument when it cannot.
std::string read_file(const std::string& path);

} // namespace tropic
