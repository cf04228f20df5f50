"""dspx25: a software recreation of a TMS320C25 DSP application-development
system — assembler, cycle-counting board simulator with audio codec,
interactive debugger, and a fixed-point DSP routine library."""

__version__ = "0.1.0"
