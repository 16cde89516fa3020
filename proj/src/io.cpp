#include "strnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace strnet {

namespace {

// 17 significant digits: the decimal form round-trips any finite double.
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_matrix(std::string& out, const Matrix& m, const char* indent) {
    out += "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += indent;
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out += ", ";
            out += format_double(m(i, j));
        }
        out += "]";
    }
    out += m.rows() > 0 ? "\n  ]" : "]";
}

Matrix matrix_from_json(const nlohmann::json& j, const char* name, std::size_t rows,
                        std::size_t cols) {
    if (!j.is_array() || j.size() != rows)
        throw std::runtime_error(std::string("weights file: field ") + name + " must be an array of " +
                                 std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw std::runtime_error(std::string("weights file: ") + name + " row " +
                                     std::to_string(i) + " must hold " + std::to_string(cols) +
                                     " numbers");
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& cell = row[k];
            if (!cell.is_number())
                throw std::runtime_error(std::string("weights file: ") + name + " row " +
                                         std::to_string(i) + " field " + std::to_string(k) +
                                         " is not a number");
            m(i, k) = cell.get<double>();
        }
    }
    return m;
}

int int_field(const nlohmann::json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_number_integer())
        throw std::runtime_error(std::string("weights file: missing integer field ") + name);
    return j[name].get<int>();
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out.good()) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string weights_to_json(const WeightSet& w) {
    validate_shapes(w);
    for (const Matrix* m : {&w.w_a, &w.w_b, &w.w_c})
        for (std::size_t i = 0; i < m->size(); ++i)
            if (!std::isfinite(m->data()[i]))
                throw std::invalid_argument("weights contain a non-finite entry");
    std::string out;
    out += "{\n";
    out += "  \"n\": " + std::to_string(w.n) + ",\n";
    out += "  \"r\": " + std::to_string(w.r) + ",\n";
    out += "  \"W_a\": ";
    append_matrix(out, w.w_a, "    ");
    out += ",\n  \"W_b\": ";
    append_matrix(out, w.w_b, "    ");
    out += ",\n  \"W_c\": ";
    append_matrix(out, w.w_c, "    ");
    out += "\n}\n";
    return out;
}

WeightSet weights_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("weights file: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("weights file: top level must be an object");
    const int n = int_field(j, "n");
    const int r = int_field(j, "r");
    if (n < 1) throw std::runtime_error("weights file: n must be >= 1");
    if (r < 0) throw std::runtime_error("weights file: r must be >= 0");
    for (const char* name : {"W_a", "W_b", "W_c"})
        if (!j.contains(name))
            throw std::runtime_error(std::string("weights file: missing field ") + name);
    const std::size_t s = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const std::size_t rr = static_cast<std::size_t>(r);
    WeightSet w{n, r, matrix_from_json(j["W_a"], "W_a", rr, s),
                matrix_from_json(j["W_b"], "W_b", rr, s),
                matrix_from_json(j["W_c"], "W_c", s, rr)};
    return w;
}

void save_weights(const WeightSet& w, const std::filesystem::path& path) {
    write_text_file(weights_to_json(w), path);
}

WeightSet load_weights(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open weights file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return weights_from_json(ss.str());
}

std::string trace_to_jsonl(const RunTrace& trace) {
    std::string out;
    char buf[160];
    for (const TraceSample& s : trace.samples) {
        std::snprintf(buf, sizeof(buf),
                      "{\"items_seen\":%llu,\"epsilon\":%.17g,\"max_weight\":%.17g,"
                      "\"skipped_count\":%llu}\n",
                      static_cast<unsigned long long>(s.items_seen), s.epsilon, s.max_weight,
                      static_cast<unsigned long long>(s.skipped_count));
        out += buf;
    }
    return out;
}

void save_trace(const RunTrace& trace, const std::filesystem::path& path) {
    write_text_file(trace_to_jsonl(trace), path);
}

}  // namespace strnet
