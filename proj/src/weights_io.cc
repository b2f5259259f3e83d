#include "cyclesim/weights_io.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cyclesim/errors.h"

namespace cyclesim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string cell(int line, int column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

void check_square(const std::vector<std::vector<std::int64_t>> &rows,
                  const std::function<std::string(int, int)> &where) {
    const int n = static_cast<int>(rows.size());
    for (int i = 0; i < n; ++i) {
        if (rows[i][i] != 0) {
            throw ValidationError(where(i, i) + ": nonzero diagonal entry " + std::to_string(rows[i][i]));
        }
        for (int k = i + 1; k < n; ++k) {
            if (rows[i][k] != rows[k][i]) {
                throw ValidationError(where(i, k) + ": asymmetric weight " + std::to_string(rows[i][k]) + " (" +
                                      where(k, i) + " has " + std::to_string(rows[k][i]) + ")");
            }
        }
    }
}

WeightMatrix flatten(const std::vector<std::vector<std::int64_t>> &rows) {
    std::vector<std::int64_t> flat;
    for (const auto &row : rows) {
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return WeightMatrix(static_cast<int>(rows.size()), std::move(flat));
}

}  // namespace

WeightMatrix parse_weights_csv(std::string_view text) {
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<int> row_lines;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty()) {
            continue;
        }
        std::vector<std::int64_t> row;
        int column = 0;
        std::size_t pos = 0;
        while (true) {
            ++column;
            std::size_t comma = line.find(',', pos);
            std::string_view field = trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
                throw ValidationError(cell(line_no, column) + ": '" + std::string(field) + "' is not an integer");
            }
            row.push_back(v);
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        rows.push_back(std::move(row));
        row_lines.push_back(line_no);
    }
    if (rows.empty()) {
        throw ValidationError("weight file is empty");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw ValidationError("line " + std::to_string(row_lines[i]) + ": expected " +
                                  std::to_string(rows.size()) + " values, found " + std::to_string(rows[i].size()));
        }
    }
    check_square(rows, [&](int i, int k) { return cell(row_lines[static_cast<std::size_t>(i)], k + 1); });
    return flatten(rows);
}

WeightMatrix parse_weights_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(std::string("weight JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array()) {
        throw ValidationError("weight JSON needs a \"weights\" array");
    }
    const auto &w = j["weights"];
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_array() || w[i].size() != w.size()) {
            throw ValidationError("weights[" + std::to_string(i) + "]: expected an array of " +
                                  std::to_string(w.size()) + " integers");
        }
        std::vector<std::int64_t> row;
        for (std::size_t k = 0; k < w[i].size(); ++k) {
            if (!w[i][k].is_number_integer()) {
                throw ValidationError("weights[" + std::to_string(i) + "][" + std::to_string(k) +
                                      "]: not an integer");
            }
            row.push_back(w[i][k].get<std::int64_t>());
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ValidationError("weight JSON has no rows");
    }
    if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<std::size_t>() != rows.size())) {
        throw ValidationError("weight JSON: \"n\" does not match the " + std::to_string(rows.size()) + " rows");
    }
    check_square(rows, [](int i, int k) {
        return "weights[" + std::to_string(i) + "][" + std::to_string(k) + "] (row " + std::to_string(i + 1) +
               ", column " + std::to_string(k + 1) + ")";
    });
    return flatten(rows);
}

WeightMatrix load_weights(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open weight file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_weights_json(text);
    }
    return parse_weights_csv(text);
}

}  // namespace cyclesim
