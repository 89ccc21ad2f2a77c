#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ramana/certificate.hpp"
#include "ramana/frs_rr.hpp"
#include "ramana/sdp_model.hpp"

namespace ramana {

struct CertificateHeader {
  std::uint64_t instance_hash = 0;
  SystemKind system = SystemKind::kDram;
  int n = 0;
  int m = 0;
};

struct CertificateFile {
  CertificateHeader header;
  RamanaCertificate cert;
};

// Line-oriented text layout:
//
//   ramana-certificate 1
//   system dram
//   instance 9f3c...           (hex hash, see InstanceHash)
//   n 3
//   m 3
//   claimed_value 0            (optional)
//   vector y 3
//   0 0 0
//   rung 1
//   vector y 3                 (absent for pram)
//   ...
//   matrix U 3
//   <3 rows>
//   matrix V 3
//   <3 rows>
//   matrix X 3                 (pram / pstrong)
//   strong 2                   (dstrong / pstrong: r, then matrix Q)
//   matrix Q 3
//   end
//
// Blank lines and lines starting with '#' are ignored.
std::string WriteCertificateString(const SdpInstance& inst, const RamanaCertificate& cert);
void WriteCertificate(const SdpInstance& inst, const RamanaCertificate& cert,
                      const std::string& path);

/// Throws ParseError on malformed text and ShapeMismatch when a record
/// disagrees with the header dimensions.
CertificateFile ReadCertificateString(const std::string& text);
CertificateFile ReadCertificate(const std::string& path);

/// Throws ShapeMismatch when the header does not describe `inst`.
void CheckCertificateTarget(const CertificateFile& file, const SdpInstance& inst);

/// Which problem an RR report describes: (P) itself, or the equality-form
/// problem over dual slacks (whose RR form yields the strong primal).
enum class RrSide { kPrimal, kDual };

struct RrReport {
  RrSide side = RrSide::kPrimal;
  std::uint64_t instance_hash = 0;  // of the original instance
  RrForm rr;
};

// ramana-rr 1 / side / instance / n / m / status / k / r ... / matrix M,
// Q, X records / end.
std::string WriteRrReportString(const SdpInstance& inst, const RrReport& report);
RrReport ReadRrReportString(const std::string& text);

}  // namespace ramana
