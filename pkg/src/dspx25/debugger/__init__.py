"""DEPC25-style debugger: command interpreter, breakpoints, remote control."""

from .session import Breakpoint, CommandError, Session, run_script
from .remote import RemoteClient, RemoteServer, parse_endpoint

__all__ = ["Breakpoint", "CommandError", "Session", "run_script",
           "RemoteClient", "RemoteServer", "parse_endpoint"]
