#include "rctls/problem_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rctls/errors.hpp"

namespace rctls {

namespace {

void write_values(std::ostream& out, std::span<const double> vals, std::size_t per_line) {
    char buf[40];
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", vals[i]);
        out << buf;
        out << (((i + 1) % per_line == 0 || i + 1 == vals.size()) ? '\n' : ' ');
    }
}

Vector read_values(std::istream& in, std::size_t count, const char* what) {
    Vector vals(count);
    for (std::size_t i = 0; i < count; ++i)
        if (!(in >> vals[i]))
            throw IoError(std::string("import_problem: truncated ") + what + " section");
    return vals;
}

} // namespace

void export_problem(const TestProblem& p, std::ostream& out) {
    const auto* dense = dynamic_cast<const DenseOperator*>(p.op.get());
    const auto* kron = dynamic_cast<const KroneckerOperator*>(p.op.get());
    if (!dense && !kron)
        throw InvalidInputError("export_problem: only dense and kronecker operators are exportable");

    out << "# rctls-problem v1\n";
    out << "# name " << p.name << "\n";
    out << "# rows " << p.op->rows() << " cols " << p.op->cols() << "\n";
    for (const auto& [key, value] : p.metadata) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        out << "# param " << key << "=" << buf << "\n";
    }
    if (dense) {
        const DenseMatrix& a = dense->matrix();
        out << "# matrix " << a.rows() << " " << a.cols() << "\n";
        write_values(out, a.entries(), a.cols());
    } else {
        out << "# kron-left " << kron->left().rows() << " " << kron->left().cols() << "\n";
        write_values(out, kron->left().entries(), kron->left().cols());
        out << "# kron-right " << kron->right().rows() << " " << kron->right().cols() << "\n";
        write_values(out, kron->right().entries(), kron->right().cols());
    }
    out << "# rhs " << p.b.size() << "\n";
    write_values(out, p.b, 8);
    out << "# xtrue " << p.x_true.size() << "\n";
    write_values(out, p.x_true, 8);
    if (!out) throw IoError("export_problem: write failed");
}

void export_problem(const TestProblem& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("export_problem: cannot open '" + path + "'");
    export_problem(p, out);
    out.flush();
    if (!out) throw IoError("export_problem: write to '" + path + "' failed");
}

TestProblem import_problem(std::istream& in) {
    TestProblem p;
    DenseMatrix dense, left, right;
    bool have_dense = false, have_kron = false;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] != '#') throw IoError("import_problem: expected a '#' header line");
        std::istringstream hdr(line.substr(1));
        std::string tag;
        hdr >> tag;
        if (tag == "rctls-problem" || tag == "rows") continue;
        if (tag == "name") {
            hdr >> p.name;
        } else if (tag == "param") {
            std::string kv;
            hdr >> kv;
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw IoError("import_problem: malformed param line");
            p.metadata[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } else if (tag == "matrix") {
            std::size_t r, c;
            if (!(hdr >> r >> c)) throw IoError("import_problem: malformed matrix header");
            dense = DenseMatrix(r, c, read_values(in, r * c, "matrix"));
            have_dense = true;
        } else if (tag == "kron-left") {
            std::size_t r, c;
            if (!(hdr >> r >> c)) throw IoError("import_problem: malformed kron-left header");
            left = DenseMatrix(r, c, read_values(in, r * c, "kron-left"));
        } else if (tag == "kron-right") {
            std::size_t r, c;
            if (!(hdr >> r >> c)) throw IoError("import_problem: malformed kron-right header");
            right = DenseMatrix(r, c, read_values(in, r * c, "kron-right"));
            have_kron = true;
        } else if (tag == "rhs") {
            std::size_t m;
            if (!(hdr >> m)) throw IoError("import_problem: malformed rhs header");
            p.b = read_values(in, m, "rhs");
        } else if (tag == "xtrue") {
            std::size_t n;
            if (!(hdr >> n)) throw IoError("import_problem: malformed xtrue header");
            p.x_true = read_values(in, n, "xtrue");
        } else {
            throw IoError("import_problem: unknown section '" + tag + "'");
        }
        // consume the rest of the current line after reading raw values
        if (tag == "matrix" || tag == "kron-left" || tag == "kron-right" || tag == "rhs" ||
            tag == "xtrue")
            std::getline(in, line);
    }
    if (have_dense)
        p.op = dense_operator(std::move(dense));
    else if (have_kron)
        p.op = kronecker_operator(std::move(left), std::move(right));
    else
        throw IoError("import_problem: no operator section found");
    p.n = p.op->cols();
    if (p.b.size() != p.op->rows())
        throw IoError("import_problem: rhs length does not match the operator");
    if (p.x_true.size() != p.op->cols())
        throw IoError("import_problem: xtrue length does not match the operator");
    return p;
}

TestProblem import_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("import_problem: cannot open '" + path + "'");
    return import_problem(in);
}

} // namespace rctls
