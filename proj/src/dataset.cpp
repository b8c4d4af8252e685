#include "ctxbench/dataset.hpp"

#include <stdexcept>

namespace ctxbench {

FeatureSchema FeatureSchema::passthrough(std::size_t width, const std::string& name) {
    FeatureSchema s;
    s.groups.push_back({name, Encoding::passthrough, 0, width, {}});
    s.total_width = width;
    return s;
}

void FeatureSchema::validate() const {
    std::size_t offset = 0;
    for (const auto& g : groups) {
        if (g.offset != offset)
            throw std::invalid_argument(msg("schema: group '", g.stream, "' offset ", g.offset,
                                            " != expected ", offset));
        if ((g.encoding == Encoding::one_hot || g.encoding == Encoding::multi_hot) &&
            g.taxonomy.size() != g.width)
            throw std::invalid_argument(msg("schema: group '", g.stream, "' taxonomy size ",
                                            g.taxonomy.size(), " != width ", g.width));
        offset += g.width;
    }
    if (offset != total_width)
        throw std::invalid_argument(msg("schema: widths sum to ", offset, " != total_width ",
                                        total_width));
}

const FeatureGroup* FeatureSchema::find(const std::string& stream) const {
    for (const auto& g : groups)
        if (g.stream == stream) return &g;
    return nullptr;
}

void Dataset::validate() const {
    schema.validate();
    if (x.cols() != schema.total_width)
        throw std::invalid_argument(msg("dataset: x has ", x.cols(), " cols, schema width ",
                                        schema.total_width));
    if (y.size() != x.rows() || users.size() != x.rows())
        throw std::invalid_argument(msg("dataset: ", x.rows(), " rows but ", y.size(),
                                        " labels / ", users.size(), " users"));
    for (LabelId id : y)
        if (id < 0 || static_cast<std::size_t>(id) >= label_names.size())
            throw std::invalid_argument(msg("dataset: label id ", id, " outside table of ",
                                            label_names.size()));
    for (UserId id : users)
        if (id < 0 || static_cast<std::size_t>(id) >= user_names.size())
            throw std::invalid_argument(msg("dataset: user id ", id, " outside table of ",
                                            user_names.size()));
}

std::vector<std::size_t> Dataset::class_counts() const {
    std::vector<std::size_t> counts(label_names.size(), 0);
    for (LabelId id : y) counts[static_cast<std::size_t>(id)]++;
    return counts;
}

Dataset Dataset::select(const std::vector<std::size_t>& idx) const {
    Dataset out;
    out.x = x.select_rows(idx);
    out.y.reserve(idx.size());
    out.users.reserve(idx.size());
    for (std::size_t i : idx) {
        out.y.push_back(y[i]);
        out.users.push_back(users[i]);
    }
    out.schema = schema;
    out.provenance = provenance;
    out.label_names = label_names;
    out.user_names = user_names;
    return out;
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::ingested: return "ingested";
        case Provenance::synthetic: return "synthetic";
        case Provenance::loaded_csv: return "loaded-csv";
        case Provenance::balanced: return "balanced";
    }
    return "?";
}

}  // namespace ctxbench
