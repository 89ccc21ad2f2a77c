#pragma once

#include <cstdint>
#include <string>

#include "ramana/builder.hpp"
#include "ramana/sdp_model.hpp"

namespace ramana {

// SDPA sparse format (.dat-s). The file describes
//
//   max <F_0, Y>  s.t.  <F_i, Y> = c_i,  Y block diagonal psd.
//
// An SdpInstance is written with F_0 = C, F_i = A_i and c = b, so reading
// gives back (P) unchanged. A StandardFormSdp writes one SDPA block per psd
// block and, when it has free scalars, two diagonal blocks (x+ and x-) with
// x = x+ - x-. Minimization objectives are negated into F_0.
//
// Numbers are written in shortest round-trip form, so text -> instance ->
// text is lossless.

std::string WriteSdpaString(const SdpInstance& inst);
std::string WriteSdpaString(const StandardFormSdp& sdp);
/// Throws IoError when the file cannot be written.
void WriteSdpa(const SdpInstance& inst, const std::string& path);
void WriteSdpa(const StandardFormSdp& sdp, const std::string& path);

/// Accepts one dense block, any number of diagonal blocks, or one dense
/// block plus diagonal blocks (placed block-diagonally in that order).
/// Throws ParseError with the offending line and UnsupportedBlockStructure
/// for two or more dense blocks.
SdpInstance ReadSdpaString(const std::string& text);
SdpInstance ReadSdpa(const std::string& path);

/// Sidecar text mapping certificate names to SDPA blocks and offsets.
std::string VarMapString(const StandardFormSdp& sdp);
void WriteVarMap(const StandardFormSdp& sdp, const std::string& path);

/// FNV-1a hash of WriteSdpaString(inst); certificate files carry it.
std::uint64_t InstanceHash(const SdpInstance& inst);

/// Shortest decimal string that parses back to exactly v.
std::string FormatDouble(double v);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

}  // namespace ramana
