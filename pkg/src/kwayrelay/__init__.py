"""Link-level simulator for the MIMO Gaussian K-way relay channel.

Implements chain-wise signal space alignment on the uplink, relay
zero-forcing with PNC (XOR) demapping, zero-forcing broadcast with
successive network-code decoding at the users, a TDMA baseline, and
rate / degrees-of-freedom measurement utilities.
"""

__version__ = "0.1.0"
