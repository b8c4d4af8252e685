#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ctxbench/matrix.hpp"

namespace ctxbench {

// Self-describing text container for fitted models: scalar fields plus named
// arrays, values printed so they reload bit-exactly.
//
//   ctxbench-model v1
//   field kind pca
//   array mean 1 12
//   <12 numbers>
//   end
class ModelWriter {
public:
    explicit ModelWriter(const std::filesystem::path& path);
    ~ModelWriter();

    void field(const std::string& name, const std::string& value);
    void field(const std::string& name, long long value);
    void array(const std::string& name, const Matrix& m);
    void array(const std::string& name, const std::vector<double>& v);
    void finish();  // writes the end marker; also called by the destructor

private:
    struct Impl;
    Impl* impl_;
};

class ModelReader {
public:
    static ModelReader load(const std::filesystem::path& path);

    bool has_field(const std::string& name) const;
    std::string field(const std::string& name) const;
    long long field_int(const std::string& name) const;
    const Matrix& array(const std::string& name) const;
    std::vector<double> vec(const std::string& name) const;  // 1 x n array

private:
    std::map<std::string, std::string> fields_;
    std::map<std::string, Matrix> arrays_;
    std::string origin_;
};

}  // namespace ctxbench
