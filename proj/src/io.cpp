#include "schatten/io.hpp"

#include <fstream>
#include <sstream>

#include "schatten/errors.hpp"

namespace schatten {

namespace {

long positive_int(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) throw ValidationError(std::string("matrix literal: missing field '") + field + "'");
    const auto& v = j.at(field);
    if (!v.is_number_integer() || v.get<long>() <= 0) {
        throw ValidationError(std::string("matrix literal: field '") + field + "' must be a positive integer");
    }
    return v.get<long>();
}

std::vector<double> real_array(const nlohmann::json& j, const char* field, std::size_t expected) {
    const auto& v = j.at(field);
    if (!v.is_array()) throw ValidationError(std::string("matrix literal: field '") + field + "' must be an array");
    if (v.size() != expected) {
        throw ValidationError(std::string("matrix literal: field '") + field + "' has " + std::to_string(v.size()) +
                              " entries, expected " + std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& x : v) {
        if (!x.is_number()) throw ValidationError(std::string("matrix literal: field '") + field + "' has a non-numeric entry");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("matrix literal: expected a JSON object");
    const long rows = positive_int(j, "rows");
    const long cols = positive_int(j, "cols");
    const auto count = static_cast<std::size_t>(rows * cols);
    if (!j.contains("re")) throw ValidationError("matrix literal: missing field 're'");
    const auto re = real_array(j, "re", count);
    const auto im = j.contains("im") ? real_array(j, "im", count) : std::vector<double>(count, 0.0);
    Matrix m(rows, cols);
    for (std::size_t k = 0; k < count; ++k) m.data()[k] = Complex(re[k], im[k]);
    if (!all_finite(m)) throw ValidationError("matrix literal: entries must be finite");
    return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        re.push_back(m.data()[k].real());
        im.push_back(m.data()[k].imag());
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Family family_from_json(const nlohmann::json& j) {
    const nlohmann::json* list = &j;
    if (j.is_object() && j.contains("members")) {
        list = &j.at("members");
    } else if (j.is_object()) {
        return Family({matrix_from_json(j)});
    }
    if (!list->is_array()) throw ValidationError("family: expected an array of matrix literals or {\"members\": [...]}");
    std::vector<Matrix> members;
    for (std::size_t i = 0; i < list->size(); ++i) {
        try {
            members.push_back(matrix_from_json((*list)[i]));
        } catch (const ValidationError& e) {
            throw ValidationError("members[" + std::to_string(i) + "]: " + e.what());
        }
    }
    try {
        return Family(std::move(members));
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
}

nlohmann::json family_to_json(const Family& f) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : f) members.push_back(matrix_to_json(m));
    return {{"members", std::move(members)}};
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError(path + ": cannot open for writing");
    out << j.dump(2) << '\n';
}

} // namespace schatten
