from setuptools import setup, find_packages


def readme():
    with open('README.rst') as f:
        return f.read()


setup(
    name='texsynth',
    version='0.1.0',
    description='Sound texture analysis and re-synthesis with random convolutional feature statistics.',
    long_description=readme(),
    author='Makoto Fujimoto',
    author_email='makoto@makoto.io',
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3',
        'Topic :: Multimedia :: Sound/Audio :: Analysis',
        'Topic :: Multimedia :: Sound/Audio :: Sound Synthesis',
        'Topic :: Scientific/Engineering',
        'Topic :: Utilities'
    ],
    packages=find_packages(exclude=['tests']),
    package_data={'texsynth': ['config/*.conf', 'generators/templates/*.tpl']},
    entry_points={
        'console_scripts': [
            'texsynth = texsynth.cli:cli'
        ]
    },
    python_requires='>=3.7',
    install_requires=['click>=7.0,<9', 'jinja2>=2.10', 'progressbar2>=3.50', 'numpy>=1.20', 'scipy>=1.6'],
    extras_require={'test': ['pytest>=6.0']}
)
