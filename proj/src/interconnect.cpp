#include "medusa/interconnect.hpp"

#include "medusa/errors.hpp"

namespace medusa {

const char* to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Medusa: return "medusa";
        case NetworkKind::Baseline: return "baseline";
    }
    return "?";
}

NetworkKind parse_network_kind(const std::string& s) {
    if (s == "medusa") return NetworkKind::Medusa;
    if (s == "baseline") return NetworkKind::Baseline;
    throw UsageError("unknown network '" + s + "' (expected medusa or baseline)");
}

}  // namespace medusa
