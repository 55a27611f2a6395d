#!/usr/bin/env python3
"""Independent dissector: exports the detector-relevant 802.11 fields of a
capture as JSON, using scapy rather than the wids3 decoder."""

import json
import struct
import sys

from scapy.all import (EAPOL, EAPOL_KEY, Dot11, Dot11AssoReq, Dot11AssoResp, Dot11Auth,
                       Dot11Beacon, Dot11Deauth, Dot11Disas, Dot11Elt, Dot11EltRSN,
                       Dot11ProbeResp, PcapNgReader, PcapReader, conf)

SAE = 3
GROUP_STATUSES = {0x0000, 0x004C, 0x004D, 0x007E}


def mac(s):
    return s.lower()


def addresses(d):
    """(sa, ra, bssid) per the To/From-DS table."""
    if d.type != 2:
        return d.addr2, d.addr1, d.addr3
    to_ds = bool(d.FCfield & 0x1)
    from_ds = bool(d.FCfield & 0x2)
    if to_ds and from_ds:
        return d.addr4, d.addr1, d.addr1
    if to_ds:
        return d.addr2, d.addr1, d.addr1
    if from_ds:
        return d.addr3, d.addr1, d.addr2
    return d.addr2, d.addr1, d.addr3


def elements(layer):
    ssid, rsn = None, None
    el = layer.getlayer(Dot11Elt)
    while el is not None and isinstance(el, Dot11Elt):
        if el.ID == 0 and ssid is None:
            ssid = el.info.decode("utf-8", "replace")
        elif el.ID == 48 and rsn is None and isinstance(el, Dot11EltRSN):
            rsn = el
        el = el.payload if isinstance(el.payload, Dot11Elt) else None
    return ssid, rsn


def put_rsn(out, rsn):
    if rsn is None:
        return
    out["akm_count"] = int(rsn.nb_akm_suites)
    out["akm_types"] = [(int(a.oui) << 8) | int(a.suite) for a in rsn.akm_suites]


def msg_nr(k):
    if k.key_type:  # pairwise
        if k.key_ack:
            return 3 if k.install else 1
        return 4 if k.secure else 2
    return 1 if k.key_ack else 2


def dissect(pkt, number):
    d = pkt.getlayer(Dot11)
    if d is None:
        return None
    sa, ra, bssid = addresses(d)
    out = {
        "number": number,
        "time_us": int(pkt.time * 1000000),
        "sa": mac(sa),
        "ra": mac(ra),
        "bssid": mac(bssid),
        "seq": int(d.SC) >> 4,
        "type": int(d.type),
        "subtype": int(d.subtype),
        "retry": bool(d.FCfield & 0x8),
    }
    for cls in (Dot11Beacon, Dot11ProbeResp):
        body = d.getlayer(cls)
        if body is not None:
            out["beacon_interval"] = int(body.beacon_interval)
            out["tsf"] = int(body.timestamp)
            ssid, rsn = elements(body)
            out["ssid"] = ssid or ""
            put_rsn(out, rsn)
    auth = d.getlayer(Dot11Auth)
    if auth is not None:
        out["auth_alg"] = int(auth.algo)
        out["auth_seq"] = int(auth.seqnum)
        out["status"] = int(auth.status)
        raw = bytes(auth.payload)
        if auth.algo == SAE and auth.seqnum == 1 and auth.status in GROUP_STATUSES and len(raw) >= 2:
            out["group"] = struct.unpack("<H", raw[:2])[0]
    req = d.getlayer(Dot11AssoReq)
    if req is not None:
        ssid, rsn = elements(req)
        if ssid is not None:
            out["ssid"] = ssid
        put_rsn(out, rsn)
    resp = d.getlayer(Dot11AssoResp)
    if resp is not None:
        out["status"] = int(resp.status)
        out["aid"] = int(resp.AID) & 0x3FFF
    for cls in (Dot11Deauth, Dot11Disas):
        body = d.getlayer(cls)
        if body is not None:
            out["reason"] = int(body.reason)
    key = pkt.getlayer(EAPOL_KEY)
    if key is not None and pkt.getlayer(EAPOL) is not None:
        out["eapol_type"] = int(key.key_descriptor_type)
        out["msgnr"] = msg_nr(key)
    return out


def main(argv):
    if len(argv) != 2:
        print("usage: dissect.py CAPTURE", file=sys.stderr)
        return 2
    conf.verb = 0
    path = argv[1]
    with open(path, "rb") as f:
        magic = f.read(4)
    reader = PcapNgReader(path) if magic == b"\x0a\x0d\x0d\x0a" else PcapReader(path)
    frames = []
    with reader:
        for i, pkt in enumerate(reader, start=1):
            rec = dissect(pkt, i)
            if rec is not None:
                frames.append(rec)
    json.dump({"capture": path.rsplit("/", 1)[-1], "frames": frames}, sys.stdout, indent=1,
              sort_keys=True)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
