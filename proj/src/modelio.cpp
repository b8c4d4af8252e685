#include "ctxbench/modelio.hpp"

#include <fstream>
#include <stdexcept>

#include "ctxbench/util.hpp"

namespace ctxbench {

struct ModelWriter::Impl {
    std::ofstream out;
    std::filesystem::path path;
    bool finished = false;
};

ModelWriter::ModelWriter(const std::filesystem::path& path) : impl_(new Impl) {
    impl_->path = path;
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) {
        delete impl_;
        throw std::runtime_error(msg("cannot write model ", path.string()));
    }
    impl_->out << "ctxbench-model v1\n";
}

ModelWriter::~ModelWriter() {
    if (!impl_->finished && impl_->out.is_open()) impl_->out << "end\n";
    delete impl_;
}

void ModelWriter::field(const std::string& name, const std::string& value) {
    impl_->out << "field " << name << " " << value << "\n";
}

void ModelWriter::field(const std::string& name, long long value) {
    impl_->out << "field " << name << " " << value << "\n";
}

void ModelWriter::array(const std::string& name, const Matrix& m) {
    impl_->out << "array " << name << " " << m.rows() << " " << m.cols() << "\n";
    std::string line;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        line.clear();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) line += ' ';
            line += format_double(m(i, j));
        }
        line += '\n';
        impl_->out << line;
    }
}

void ModelWriter::array(const std::string& name, const std::vector<double>& v) {
    array(name, Matrix(1, v.size(), v));
}

void ModelWriter::finish() {
    impl_->out << "end\n";
    impl_->finished = true;
    impl_->out.close();
    if (!impl_->out) throw std::runtime_error(msg("write failed for ", impl_->path.string()));
}

ModelReader ModelReader::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(msg("cannot open model ", path.string()));
    ModelReader r;
    r.origin_ = path.string();

    std::string line;
    if (!std::getline(in, line) || trim(line) != "ctxbench-model v1")
        throw std::runtime_error(msg(path.string(), ": not a ctxbench model file"));

    bool saw_end = false;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "end") {
            saw_end = true;
            break;
        }
        std::istringstream is(t);
        std::string word, name;
        is >> word >> name;
        if (word == "field") {
            std::string rest;
            std::getline(is, rest);
            r.fields_[name] = trim(rest);
        } else if (word == "array") {
            std::size_t rows = 0, cols = 0;
            is >> rows >> cols;
            if (!is) throw std::runtime_error(msg(path.string(), ": bad array header: ", t));
            Matrix m(rows, cols);
            for (std::size_t i = 0; i < rows; ++i) {
                if (!std::getline(in, line))
                    throw std::runtime_error(msg(path.string(), ": truncated array ", name));
                const char* p = line.c_str();
                char* end = nullptr;
                for (std::size_t j = 0; j < cols; ++j) {
                    double v = std::strtod(p, &end);
                    if (end == p)
                        throw std::runtime_error(msg(path.string(), ": bad number in array ",
                                                     name, " row ", i));
                    m(i, j) = v;
                    p = end;
                }
            }
            r.arrays_.emplace(name, std::move(m));
        } else {
            throw std::runtime_error(msg(path.string(), ": unexpected line: ", t));
        }
    }
    if (!saw_end) throw std::runtime_error(msg(path.string(), ": missing end marker"));
    return r;
}

bool ModelReader::has_field(const std::string& name) const { return fields_.count(name) > 0; }

std::string ModelReader::field(const std::string& name) const {
    auto it = fields_.find(name);
    if (it == fields_.end())
        throw std::runtime_error(msg(origin_, ": missing field '", name, "'"));
    return it->second;
}

long long ModelReader::field_int(const std::string& name) const {
    return parse_int(field(name), name);
}

const Matrix& ModelReader::array(const std::string& name) const {
    auto it = arrays_.find(name);
    if (it == arrays_.end())
        throw std::runtime_error(msg(origin_, ": missing array '", name, "'"));
    return it->second;
}

std::vector<double> ModelReader::vec(const std::string& name) const {
    const Matrix& m = array(name);
    return m.data();
}

}  // namespace ctxbench
