#include "egen/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace egen {

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string render(const Diagnostic& d, const std::string& file) {
    std::ostringstream out;
    out << (file.empty() ? "<input>" : file) << ':' << d.span.line << ':' << d.span.column
        << ": " << (d.severity == Severity::Error ? "error" : "warning") << '[' << d.code
        << "]: " << d.message;
    return out.str();
}

} // namespace egen
