#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctxbench/matrix.hpp"

namespace ctxbench {

using LabelId = int;
using UserId = int;

enum class Encoding { passthrough, one_hot, multi_hot, boolean };

// Ordered mapping from named streams to encoded feature columns.
struct FeatureGroup {
    std::string stream;
    Encoding encoding = Encoding::passthrough;
    std::size_t offset = 0;
    std::size_t width = 0;
    std::vector<std::string> taxonomy;  // one_hot / multi_hot only
};

struct FeatureSchema {
    std::vector<FeatureGroup> groups;
    std::size_t total_width = 0;

    static FeatureSchema passthrough(std::size_t width, const std::string& name = "features");
    void validate() const;  // offsets contiguous, widths sum up
    const FeatureGroup* find(const std::string& stream) const;
};

enum class Provenance { ingested, synthetic, loaded_csv, balanced };

// Samples x features plus labels, users, schema and provenance. Labels and
// users are indices into the name tables so CSV round-trips keep strings.
struct Dataset {
    Matrix x;
    std::vector<LabelId> y;
    std::vector<UserId> users;
    FeatureSchema schema;
    Provenance provenance = Provenance::ingested;
    std::vector<std::string> label_names;
    std::vector<std::string> user_names;

    std::size_t rows() const { return x.rows(); }
    std::size_t width() const { return x.cols(); }
    std::size_t n_classes() const { return label_names.size(); }

    void validate() const;  // shape/table invariants, throws on violation
    std::vector<std::size_t> class_counts() const;
    Dataset select(const std::vector<std::size_t>& idx) const;
};

const char* provenance_name(Provenance p);

}  // namespace ctxbench
