#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mubkit/types.hpp"

namespace mubkit {

/// Input file could not be parsed as a matrix document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// On-disk matrix document: order (or rows/cols when rectangular), optional
/// bipartite shape, and entries as {re, im} decimal pairs. Serialisation
/// round-trips bit-exactly: emit -> parse -> emit is byte-identical.
struct MatrixFile {
    ComplexMatrix matrix;
    std::optional<BipartiteShape> shape;
};

std::string matrix_to_json(const MatrixFile& file);
MatrixFile matrix_from_json(const std::string& text);

std::string vectors_to_json(const std::vector<ComplexVector>& vectors);
std::vector<ComplexVector> vectors_from_json(const std::string& text);

}  // namespace mubkit
