#include "qcldpc/base_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qcldpc {

namespace {

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string_view> split_tokens(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i]))
            ++i;
        if (i > start)
            tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& out)
{
    const char* first = token.data();
    const char* last = token.data() + token.size();
    // from_chars rejects a leading '+', accept it for hand-written files
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string line_message(std::size_t line, const std::string& what)
{
    return "line " + std::to_string(line) + ": " + what;
}

} // namespace

BaseMatrix::BaseMatrix(std::size_t n_rows, std::size_t n_cols, std::size_t z, std::vector<int> shifts)
    : n_rows_(n_rows), n_cols_(n_cols), z_(z), shifts_(std::move(shifts))
{
    if (n_rows_ == 0 || n_cols_ == 0)
        throw std::invalid_argument("base matrix must have at least one row and one column");
    if (z_ == 0)
        throw std::invalid_argument("expansion factor must be positive");
    if (shifts_.size() != n_rows_ * n_cols_)
        throw std::invalid_argument("shift grid size does not match dimensions");
    for (std::size_t r = 0; r < n_rows_; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < n_cols_; ++c) {
            const int s = shift(r, c);
            if (s != kZeroBlock && (s < 0 || static_cast<std::size_t>(s) >= z_))
                throw std::invalid_argument("shift " + std::to_string(s) + " at (" + std::to_string(r) + ", "
                                            + std::to_string(c) + ") out of range");
            any = any || s != kZeroBlock;
        }
        if (!any)
            throw std::invalid_argument("empty check row " + std::to_string(r));
    }
}

std::size_t BaseMatrix::edge_count() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(shifts_.begin(), shifts_.end(), [](int s) { return s != kZeroBlock; }));
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(line_message(line, what)), kind_(kind), line_(line)
{
}

BaseMatrix parse_base_matrix(std::string_view text)
{
    auto lines = split_lines(text);
    while (!lines.empty() && split_tokens(lines.back()).empty())
        lines.pop_back();
    if (lines.empty())
        throw ParseError(ParseErrorKind::malformed_header, 1, "missing header");

    const auto header = split_tokens(lines[0]);
    std::size_t n_rows = 0, n_cols = 0, z = 0;
    if (header.size() != 3 || !parse_number(header[0], n_rows) || !parse_number(header[1], n_cols)
        || !parse_number(header[2], z))
        throw ParseError(ParseErrorKind::malformed_header, 1, "header must be \"n_rows n_cols z\"");
    if (n_rows == 0 || n_cols == 0 || z == 0)
        throw ParseError(ParseErrorKind::malformed_header, 1, "dimensions and z must be positive");

    if (lines.size() - 1 != n_rows) {
        // first missing line, or first surplus line
        const std::size_t at = lines.size() < n_rows + 1 ? lines.size() + 1 : n_rows + 2;
        throw ParseError(ParseErrorKind::wrong_row_count, at,
                         "expected " + std::to_string(n_rows) + " rows, found " + std::to_string(lines.size() - 1));
    }

    std::vector<int> shifts;
    shifts.reserve(n_rows * n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t line_no = r + 2;
        const auto tokens = split_tokens(lines[r + 1]);
        if (tokens.size() != n_cols)
            throw ParseError(ParseErrorKind::wrong_column_count, line_no,
                             "expected " + std::to_string(n_cols) + " columns, found "
                                 + std::to_string(tokens.size()));
        bool any = false;
        for (const auto token : tokens) {
            long long value = 0;
            if (!parse_number(token, value))
                throw ParseError(ParseErrorKind::bad_token, line_no, "not an integer: \"" + std::string(token) + "\"");
            if (value != kZeroBlock && (value < 0 || static_cast<unsigned long long>(value) >= z))
                throw ParseError(ParseErrorKind::shift_out_of_range, line_no,
                                 "shift " + std::to_string(value) + " outside [0, " + std::to_string(z - 1) + "]");
            any = any || value != kZeroBlock;
            shifts.push_back(static_cast<int>(value));
        }
        if (!any)
            throw ParseError(ParseErrorKind::empty_check_row, line_no, "empty check row");
    }
    return BaseMatrix(n_rows, n_cols, z, std::move(shifts));
}

std::string serialize(const BaseMatrix& base)
{
    std::string out = std::to_string(base.n_rows()) + ' ' + std::to_string(base.n_cols()) + ' '
                      + std::to_string(base.z()) + '\n';
    for (std::size_t r = 0; r < base.n_rows(); ++r) {
        for (std::size_t c = 0; c < base.n_cols(); ++c) {
            if (c != 0)
                out += ' ';
            out += std::to_string(base.shift(r, c));
        }
        out += '\n';
    }
    return out;
}

BaseMatrix load_base_matrix(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open matrix file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw std::ios_base::failure("error reading matrix file: " + path);
    return parse_base_matrix(buffer.str());
}

ParityCheckMatrix expand(const BaseMatrix& base)
{
    const std::size_t z = base.z();
    const std::size_t n_checks = base.n_rows() * z;
    const std::size_t n_vars = base.n_cols() * z;

    ParityCheckMatrix h;
    h.row_offsets_.assign(n_checks + 1, 0);
    h.row_vars_.reserve(base.edge_count() * z);

    std::vector<std::uint32_t> row_buffer;
    for (std::size_t i = 0; i < base.n_rows(); ++i) {
        for (std::size_t k = 0; k < z; ++k) {
            row_buffer.clear();
            for (std::size_t c = 0; c < base.n_cols(); ++c) {
                if (base.is_zero(i, c))
                    continue;
                const std::size_t offset = (k + static_cast<std::size_t>(base.shift(i, c))) % z;
                row_buffer.push_back(static_cast<std::uint32_t>(c * z + offset));
            }
            // columns are visited in increasing order and each block spans
            // [c*z, c*z + z), so the row is already sorted
            h.row_vars_.insert(h.row_vars_.end(), row_buffer.begin(), row_buffer.end());
            h.row_offsets_[i * z + k + 1] = h.row_vars_.size();
        }
    }

    std::vector<std::size_t> counts(n_vars, 0);
    for (const auto v : h.row_vars_)
        ++counts[v];
    h.col_offsets_.assign(n_vars + 1, 0);
    std::partial_sum(counts.begin(), counts.end(), h.col_offsets_.begin() + 1);
    h.col_checks_.resize(h.row_vars_.size());
    h.col_edges_.resize(h.row_vars_.size());
    std::vector<std::size_t> cursor(h.col_offsets_.begin(), h.col_offsets_.end() - 1);
    for (std::size_t m = 0; m < n_checks; ++m) {
        for (std::size_t e = h.row_offsets_[m]; e < h.row_offsets_[m + 1]; ++e) {
            const std::size_t slot = cursor[h.row_vars_[e]]++;
            h.col_checks_[slot] = static_cast<std::uint32_t>(m);
            h.col_edges_[slot] = static_cast<std::uint32_t>(e);
        }
    }
    return h;
}

CodeDescriptor descriptor(const BaseMatrix& base)
{
    if (base.n_cols() <= base.n_rows())
        throw std::invalid_argument("code rate must be positive: n_cols (" + std::to_string(base.n_cols())
                                    + ") must exceed n_rows (" + std::to_string(base.n_rows()) + ")");
    CodeDescriptor d;
    d.block_length = base.n_cols() * base.z();
    d.n_checks = base.n_rows() * base.z();
    d.rate = static_cast<double>(base.n_cols() - base.n_rows()) / static_cast<double>(base.n_cols());
    d.total_edges = base.edge_count();
    d.total_expanded_edges = d.total_edges * base.z();
    return d;
}

} // namespace qcldpc
