#pragma once

#include "fisherce/ce_engine.hpp"
#include "fisherce/market.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace fisherce {

using Json = nlohmann::ordered_json;

/// Reads the market file format. Errors are InvalidInput with a JSON-path prefix
/// such as "agents[1].preference.levels[3]: ...".
Market parse_market(std::string_view text, int item_cap = kDefaultItemCap);
Market market_from_json(const Json& doc, int item_cap = kDefaultItemCap);

/// Agents are written in canonical (descending budget) order, each preference in
/// the encoding it was read from.
Json market_to_json(const Market& market);
std::string serialize_market(const Market& market);

Json bundle_to_json(const Market& market, Bundle s);

Json certificate_to_json(const Market& market, const CECertificate& cert);

struct CertificateInput {
    Allocation allocation;
    PriceVector prices;
};

/// Reads the "allocation" and "prices" members of a certificate document; any
/// "valid" or "verdicts" members are ignored and recomputed by the caller.
CertificateInput certificate_from_json(const Market& market, const Json& doc);
CertificateInput parse_certificate(const Market& market, std::string_view text);

} // namespace fisherce
