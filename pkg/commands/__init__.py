from .compare import command as compare_command
from .eval import command as eval_command
from .run import command as run_command

all_commands = [run_command, eval_command, compare_command]
