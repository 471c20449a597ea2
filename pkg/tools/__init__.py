"""
Tool orchestrators shared by the CLI and the MCP server
"""

from tools.bench import BenchRequest, BenchResult, BenchTool
from tools.blur import BlurRequest, BlurResult, BlurTool
from tools.constants import ConstantsRequest, ConstantsTool, constants_report, format_key_values
from tools.deblur import DeblurRequest, DeblurResult, DeblurTool

__all__ = [
    "BenchRequest",
    "BenchResult",
    "BenchTool",
    "BlurRequest",
    "BlurResult",
    "BlurTool",
    "ConstantsRequest",
    "ConstantsTool",
    "constants_report",
    "format_key_values",
    "DeblurRequest",
    "DeblurResult",
    "DeblurTool",
]
