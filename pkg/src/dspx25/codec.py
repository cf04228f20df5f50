"""ADDA2 acquisition module: 12-bit ADC/DAC at 25 kS/s with selectable gain.

One shared sample clock drives both converter directions.  Every
cycles_per_sample = round(clock_mhz*1e6 / 4 / sample_rate) CPU cycles (the
C25 executes one cycle per 4 clock periods) the codec:

  1. quantizes the next source sample s in [-1, 1):
         code = clamp(round_half_up(s * gain * 2048), -2048, 2047)
     and stores it sign-extended in the ADC latch (overrun flags a latch
     that was still unread),
  2. emits the last written DAC word (low 12 bits, two's complement,
     / 2048.0) to the sink,
  3. raises INT0 in interrupt mode.

Port map (our definition; the module docs are normative for dsplib):

  port 0  read   ADC latch, clears adc_ready
  port 1  write  DAC register        (read returns the register)
  port 2  read   status: bit0 adc_ready, bit1 dac_ready (always 1),
                 bit2 overrun (cleared by the read), bits 4-6 digital inputs
  port 3  write  control: bit0 mode (1 = interrupt), bits 1-3 gain code,
                 bit4 running        (read returns the control byte)

Gain codes 0..5 map to 0.5, 1.0, 1.5, 2.0, 2.5, 3.0; higher codes clamp
to 5.  A missing source acts as an endless silence generator; a finite
source that runs dry stops the codec after draining.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Optional

from .isa import defs

MODE_POLLING = 0
MODE_INTERRUPT = 1

GAINS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)


def quantize(s: float, gain: float) -> int:
    """12-bit two's-complement ADC code for one sample."""
    import math
    code = math.floor(s * gain * 2048.0 + 0.5)
    if code > 2047:
        return 2047
    if code < -2048:
        return -2048
    return code


def dac_value(word: int) -> int:
    """Signed 12-bit DAC code from a written 16-bit word."""
    v = word & 0xFFF
    return v - 4096 if v & 0x800 else v


class ListSource:
    """Finite sample provider over a float sequence."""

    def __init__(self, samples: Iterable[float]):
        self._samples = list(samples)
        self._pos = 0

    def take(self) -> Optional[float]:
        if self._pos >= len(self._samples):
            return None
        s = self._samples[self._pos]
        self._pos += 1
        return s


class Codec:
    def __init__(self, sample_rate: int = 25000, clock_mhz: float = 40.0):
        if sample_rate <= 0:
            raise ValueError("sample rate must be positive")
        self.sample_rate = sample_rate
        self.cycles_per_sample = round(clock_mhz * 1e6 / 4 / sample_rate)
        self.phase = self.cycles_per_sample   # cycles until next event
        self.gain_code = 1                    # gain 1.0
        self.mode = MODE_POLLING
        self.running = False
        self.adc_latch = 0
        self.adc_ready = False
        self.overrun = False
        self.din = 0
        self.source = None                    # None = endless silence
        self.dac_reg = 0
        self.dac_tail: deque[int] = deque(maxlen=4096)   # recent DAC codes
        self.capture: Optional[list[int]] = None          # full DAC capture
        self.irq: Optional[Callable[[int], None]] = None
        self.events = 0                       # sample events since creation
        self.clock = 0                        # total cycles seen
        self.din_script: list[tuple[int, int]] = []       # (cycle, value)
        self._din_pos = 0

    @property
    def gain(self) -> float:
        return GAINS[self.gain_code]

    # -- clocking ----------------------------------------------------------

    def tick(self, cycles: int) -> int:
        """Advance the sample clock by `cycles`; returns events fired."""
        self.clock += cycles
        while self._din_pos < len(self.din_script) and \
                self.din_script[self._din_pos][0] <= self.clock:
            self.din = self.din_script[self._din_pos][1] & 7
            self._din_pos += 1
        if not self.running:
            return 0
        fired = 0
        self.phase -= cycles
        while self.phase <= 0:
            self.phase += self.cycles_per_sample
            if not self._event():
                break
            fired += 1
        return fired

    def _event(self) -> bool:
        s = 0.0 if self.source is None else self.source.take()
        if s is None:
            self.running = False          # source drained: stop sampling
            return False
        code = quantize(s, self.gain)
        self.adc_latch = code & 0xFFFF
        if self.adc_ready:
            self.overrun = True
        self.adc_ready = True
        out = dac_value(self.dac_reg)
        self.dac_tail.append(out)
        if self.capture is not None:
            self.capture.append(out)
        self.events += 1
        if self.mode == MODE_INTERRUPT and self.irq is not None:
            self.irq(defs.INT0)
        return True

    # -- I/O port space ------------------------------------------------------

    def io_in(self, port: int) -> int:
        if port == 0:
            self.adc_ready = False
            return self.adc_latch
        if port == 1:
            return self.dac_reg
        if port == 2:
            st = (1 if self.adc_ready else 0) | 0x02 \
                | (0x04 if self.overrun else 0) | ((self.din & 7) << 4)
            self.overrun = False
            return st
        if port == 3:
            return self._control_word()
        return 0

    def io_out(self, port: int, word: int) -> None:
        word &= 0xFFFF
        if port == 1:
            self.dac_reg = word
        elif port == 3:
            self.mode = word & 1
            self.gain_code = min((word >> 1) & 7, 5)
            run = bool(word & 0x10)
            if run and not self.running:
                self.phase = self.cycles_per_sample
            self.running = run
        # other ports: writes ignored

    def _control_word(self) -> int:
        return (self.mode | (self.gain_code << 1)
                | (0x10 if self.running else 0))
