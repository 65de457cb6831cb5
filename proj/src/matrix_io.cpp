#include "mubkit/matrix_io.hpp"

#include <json.hpp>

namespace mubkit {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& c) {
    return json{{"re", c.real()}, {"im", c.imag()}};
}

Complex complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
        throw ParseError("entry must be an object with numeric fields 're' and 'im'");
    }
    if (!j["re"].is_number() || !j["im"].is_number()) {
        throw ParseError("entry fields 're' and 'im' must be numbers");
    }
    return Complex(j["re"].get<double>(), j["im"].get<double>());
}

}  // namespace

std::string matrix_to_json(const MatrixFile& file) {
    const ComplexMatrix& m = file.matrix;
    json doc;
    if (m.is_square()) {
        doc["order"] = m.rows;
    } else {
        doc["rows"] = m.rows;
        doc["cols"] = m.cols;
    }
    if (file.shape) doc["shape"] = json::array({file.shape->d_A, file.shape->d_B});
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    return doc.dump(2) + "\n";
}

MatrixFile matrix_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top-level value must be an object");
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
        throw ParseError("missing 'entries' array");
    }

    std::size_t rows = 0, cols = 0;
    if (doc.contains("order")) {
        if (!doc["order"].is_number_unsigned()) throw ParseError("'order' must be a positive integer");
        rows = cols = doc["order"].get<std::size_t>();
    } else if (doc.contains("rows") && doc.contains("cols")) {
        if (!doc["rows"].is_number_unsigned() || !doc["cols"].is_number_unsigned()) {
            throw ParseError("'rows' and 'cols' must be positive integers");
        }
        rows = doc["rows"].get<std::size_t>();
        cols = doc["cols"].get<std::size_t>();
    } else {
        throw ParseError("document must carry 'order' or both 'rows' and 'cols'");
    }
    if (rows == 0 || cols == 0) throw ParseError("matrix dimensions must be positive");

    const json& entries = doc["entries"];
    if (entries.size() != rows) {
        throw ParseError("'entries' has " + std::to_string(entries.size()) + " rows, expected " +
                         std::to_string(rows));
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = entries[i];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError("row " + std::to_string(i) + " must be an array of " +
                             std::to_string(cols) + " entries");
        }
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex_from_json(row[j]);
    }
    m.ensure_finite("matrix_from_json");

    MatrixFile file;
    file.matrix = std::move(m);
    if (doc.contains("shape")) {
        const json& s = doc["shape"];
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() ||
            !s[1].is_number_unsigned()) {
            throw ParseError("'shape' must be an array of two positive integers");
        }
        BipartiteShape shape{s[0].get<std::size_t>(), s[1].get<std::size_t>()};
        shape.validate();
        file.shape = shape;
    }
    return file;
}

std::string vectors_to_json(const std::vector<ComplexVector>& vectors) {
    json doc;
    json list = json::array();
    for (const auto& v : vectors) {
        json jv = json::array();
        for (const auto& e : v) jv.push_back(complex_to_json(e));
        list.push_back(std::move(jv));
    }
    doc["vectors"] = std::move(list);
    return doc.dump(2) + "\n";
}

std::vector<ComplexVector> vectors_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vectors") || !doc["vectors"].is_array()) {
        throw ParseError("missing 'vectors' array");
    }
    std::vector<ComplexVector> out;
    for (const auto& jv : doc["vectors"]) {
        if (!jv.is_array()) throw ParseError("each vector must be an array");
        ComplexVector v;
        v.reserve(jv.size());
        for (const auto& e : jv) v.push_back(complex_from_json(e));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace mubkit
