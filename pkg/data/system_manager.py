"""
System management module for loading and saving equation files.
"""

import logging
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Tuple

import config
from algebra.expressions import Expression, RewriteRule, VariableTable
from algebra.parser import format_system, parse_system
from errors import EquationSyntaxError, ExpressionError
from reduction.scheduler import Strategy, SystemState

logger = logging.getLogger(__name__)


class ParsedSystem(NamedTuple):
    table: VariableTable
    equations: List[Expression]
    rules: List[RewriteRule]


class SystemManager:
    """Manages loading, saving and state construction for one equation system."""

    def __init__(self):
        self.system: Optional[ParsedSystem] = None
        self.source: Optional[Path] = None
        self.text: Optional[str] = None
        self.promote: Tuple[str, ...] = ()

    def load_system(self, filepath, promote: Iterable[str] = ()
                    ) -> Tuple[bool, str, Optional[ParsedSystem]]:
        """
        Load and parse an equation file.

        Args:
            filepath: Path to the equation file
            promote: Parameter names to treat as unknowns

        Returns:
            Tuple of (success, message, parsed system)
        """
        path = Path(filepath)
        promote = tuple(promote)
        try:
            text = path.read_text(encoding="utf-8")
            system = ParsedSystem(*parse_system(text, promote=promote))
        except FileNotFoundError:
            return False, (
                f"File not found: {path}\n\n"
                f"Please check:\n"
                f"• File path is correct\n"
                f"• File has not been moved or deleted"
            ), None
        except PermissionError:
            return False, (
                f"Permission denied: {path}\n\n"
                f"Possible solutions:\n"
                f"• Check the file is readable\n"
                f"• Ensure you have permission to access this location"
            ), None
        except UnicodeDecodeError as e:
            return False, (
                f"Cannot decode {path}: {e.reason}\n\n"
                f"Possible causes:\n"
                f"• Equation files must be UTF-8 text\n"
                f"• The file may be binary or in another encoding"
            ), None
        except EquationSyntaxError as e:
            return False, (
                f"{path}: {e}\n\n"
                f"Possible causes:\n"
                f"• A name is used without an indep, unknown or param declaration\n"
                f"• Implicit multiplication such as '2x' instead of '2*x'\n"
                f"• d(...) applied to something that is not an unknown"
            ), None
        except ExpressionError as e:
            return False, (
                f"Error reading {path}: {e}\n\n"
                f"Possible causes:\n"
                f"• Rewrite rules that keep feeding each other\n"
                f"• --treat-as-unknown names a symbol that is not a parameter"
            ), None

        self.system = system
        self.source = path
        self.text = text
        self.promote = promote
        message = (f"Loaded {len(system.equations)} equations with "
                   f"{sum(len(eq) for eq in system.equations)} terms from {path}")
        if system.rules:
            message += f" ({len(system.rules)} rewrite rules)"
        logger.info(message)
        return True, message, system

    def build_state(self, strategy: str = config.DEFAULT_STRATEGY) -> Optional[SystemState]:
        """Create a reduction state from the loaded system."""
        if self.system is None:
            return None
        return SystemState.build(self.system.table, self.system.equations, self.system.rules,
                                 Strategy(strategy))

    def save_system(self, filepath, state: SystemState,
                    header: Optional[str] = None) -> Tuple[bool, str]:
        """
        Write the equations of a state in the equation file format.

        Args:
            filepath: Destination path
            state: System whose live equations are written (in id order)
            header: Optional comment block placed at the top

        Returns:
            Tuple of (success, message)
        """
        path = Path(filepath)
        try:
            path.write_text(format_system(state.table, state.expressions(), state.rules, header),
                            encoding="utf-8")
            return True, f"Saved {len(state.equations)} equations to {path}"
        except PermissionError:
            return False, (
                f"Permission denied: {path}\n\n"
                f"Possible solutions:\n"
                f"• Check the file is not read-only\n"
                f"• Ensure you have write permission to this location\n"
                f"• Try saving to a different location"
            )
        except OSError as e:
            return False, (
                f"Error saving system: {e}\n\n"
                f"Possible causes:\n"
                f"• Insufficient disk space\n"
                f"• Invalid file path or filename"
            )

    def unrewritten_equations(self) -> Optional[List[Expression]]:
        """The loaded equations parsed again without applying the rewrite rules."""
        if self.text is None:
            return None
        return parse_system(self.text, promote=self.promote, use_rules=False)[1]
