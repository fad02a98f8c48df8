#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "zclust/certify.hpp"
#include "zclust/sos.hpp"

namespace zclust {

using json = nlohmann::ordered_json;

// polynomial encoding: {"n": int, "terms": [{"exp": [int,...], "re": f, "im": f}]}
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);

// system file: {"system": [<poly>...], "point": [[re,im],...] (optional)}
json system_to_json(const PolySystem& f);
PolySystem system_from_json(const json& j);
json point_to_json(const CVector& y);
CVector point_from_json(const json& j);

json certificate_to_json(const ClusterCertificate& cert);
ClusterCertificate certificate_from_json(const json& j);

// {"c": float, "G": [[...]], "lambda": {"terms": [{"exp": [...], "coeff": f}]}}
SosCertificate sos_certificate_from_json(const json& j, int m);

/// FNV-1a hash (hex) of the canonical serialization of the inputs.
std::string input_digest(const PolySystem& f, const CVector& y,
                         const CertifyOptions& opts);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace zclust
