#!/usr/bin/env python3
# Copyright 2026 The FxSearcher Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the bundled 2 s test clip: plucked notes over a soft pad, stereo."""

import argparse
import math
import random
import struct
import wave

RATE = 44100
SECONDS = 2.0


def render():
    rng = random.Random(20260101)
    n = int(RATE * SECONDS)
    left = [0.0] * n
    right = [0.0] * n
    # Pad: A minor triad, slow attack.
    for freq in (220.0, 261.63, 329.63):
        for i in range(n):
            env = min(1.0, i / (0.3 * RATE))
            v = 0.08 * env * math.sin(2 * math.pi * freq * i / RATE)
            left[i] += v
            right[i] += v * 0.9
    # Plucks with exponential decay and a little noise on the attack.
    for onset, freq in ((0.0, 440.0), (0.5, 587.33), (1.0, 659.25), (1.5, 880.0)):
        start = int(onset * RATE)
        for i in range(start, n):
            t = (i - start) / RATE
            env = math.exp(-6.0 * t)
            v = 0.3 * env * (math.sin(2 * math.pi * freq * t) +
                             0.3 * math.sin(4 * math.pi * freq * t))
            if t < 0.01:
                v += 0.1 * (rng.random() * 2 - 1)
            left[i] += v * 0.8
            right[i] += v
    return left, right


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output")
    args = parser.parse_args()
    left, right = render()
    frames = bytearray()
    for l, r in zip(left, right):
        for v in (l, r):
            frames += struct.pack("<h", max(-32768, min(32767, round(v * 32767))))
    with wave.open(args.output, "wb") as w:
        w.setnchannels(2)
        w.setsampwidth(2)
        w.setframerate(RATE)
        w.writeframes(bytes(frames))


if __name__ == "__main__":
    main()
