#include "ctxbench/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "ctxbench/util.hpp"

namespace ctxbench {

void save_csv(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(msg("cannot open ", path.string(), " for writing"));

    const bool with_user = !d.user_names.empty();
    std::string header;
    for (std::size_t j = 0; j < d.width(); ++j) {
        header += "f";
        header += std::to_string(j);
        header += ",";
    }
    header += with_user ? "label,user\n" : "label\n";
    out << header;

    char buf[40];
    std::string line;
    for (std::size_t i = 0; i < d.rows(); ++i) {
        line.clear();
        const double* row = d.x.row_ptr(i);
        for (std::size_t j = 0; j < d.width(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            line += buf;
            line += ',';
        }
        line += d.label_names[static_cast<std::size_t>(d.y[i])];
        if (with_user) {
            line += ',';
            line += d.user_names[static_cast<std::size_t>(d.users[i])];
        }
        line += '\n';
        out << line;
    }
    if (!out) throw std::runtime_error(msg("write failed for ", path.string()));
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(msg("cannot open ", path.string()));

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(msg(path.string(), ": empty file"));
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split(line, ',');
    std::ptrdiff_t label_col = -1, user_col = -1;
    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string name = trim(header[c]);
        if (name == "label")
            label_col = static_cast<std::ptrdiff_t>(c);
        else if (name == "user")
            user_col = static_cast<std::ptrdiff_t>(c);
        else
            feature_cols.push_back(c);
    }
    if (label_col < 0)
        throw std::runtime_error(msg(path.string(), ": no 'label' column in header"));

    Dataset d;
    d.provenance = Provenance::loaded_csv;
    std::unordered_map<std::string, LabelId> label_ids;
    std::unordered_map<std::string, UserId> user_ids;
    std::vector<double> values;
    std::vector<std::string> fields;
    std::size_t row = 0;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fields = split(line, ',');
        if (fields.size() != header.size())
            throw std::runtime_error(msg(path.string(), ": row ", row + 1, " has ",
                                         fields.size(), " fields, header has ", header.size()));
        for (std::size_t c : feature_cols) {
            const std::string& cell = fields[c];
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw std::runtime_error(msg(path.string(), ": non-numeric cell at row ",
                                             row + 1, " col ", c, ": '", cell, "'"));
            values.push_back(v);
        }
        const std::string& label = fields[static_cast<std::size_t>(label_col)];
        auto [lit, lnew] = label_ids.try_emplace(label, static_cast<LabelId>(d.label_names.size()));
        if (lnew) d.label_names.push_back(label);
        d.y.push_back(lit->second);

        std::string user = user_col >= 0 ? fields[static_cast<std::size_t>(user_col)] : "u0";
        auto [uit, unew] = user_ids.try_emplace(user, static_cast<UserId>(d.user_names.size()));
        if (unew) d.user_names.push_back(user);
        d.users.push_back(uit->second);
        ++row;
    }

    d.x = Matrix(row, feature_cols.size(), std::move(values));
    d.schema = FeatureSchema::passthrough(feature_cols.size());
    d.validate();
    return d;
}

}  // namespace ctxbench
