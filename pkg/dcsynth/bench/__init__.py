from .transfer_line import TRANSFER_LINE_MODEL as TRANSFER_LINE_MODEL
from .transfer_line import generate_transfer_line as generate_transfer_line
from .transfer_line import instance_counts as instance_counts
from .run import CSV_COLUMNS as CSV_COLUMNS
from .run import BenchRow as BenchRow
from .run import TlConfig as TlConfig
from .run import read_csv as read_csv
from .run import run_bench as run_bench
from .run import run_row as run_row
from .run import small_scale_grid as small_scale_grid
from .run import write_csv as write_csv
